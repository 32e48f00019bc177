//! Setup from a directory of service files, as `olbsq setup` does, then
//! reading the published catalog back.
//!
//! ```text
//! cargo run --example catalog_files
//! ```

use std::fs;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::files::{cell_file_name, load_catalog, load_secret_key, setup_dir};
use olbsq::group::ParameterSet;

fn main() -> olbsq::error::Result<()> {
    let work = tempfile::tempdir()?;
    let services = work.path().join("services");
    fs::create_dir_all(&services)?;
    // Cells without a file are empty services.
    for (col, row, text) in [(1, 1, "bakery"), (2, 1, "library"), (3, 2, "clinic")] {
        fs::write(services.join(cell_file_name(col, row)), text)?;
    }

    let out = setup_dir(
        ParameterSet::default(),
        3,
        2,
        &services,
        &work.path().join("provider"),
        &mut ChaCha20Rng::from_entropy(),
    )?;
    println!("catalog    {} bytes", fs::metadata(&out.catalog)?.len());
    println!("secret key {} bytes", fs::metadata(&out.secret_key)?.len());

    let (pp, catalog) = load_catalog(&out.catalog)?;
    let (params, sk) = load_secret_key(&out.secret_key)?;
    println!("{}x{} grid over {}", pp.m, pp.n, params.name);
    for ((col, row), _) in catalog.a.iter() {
        let cell = olbsq::catalog::decrypt_direct(&sk, &catalog, col, row)?;
        println!("  ({col}, {row}): {:?}", String::from_utf8_lossy(&cell.payload));
    }
    Ok(())
}
