//! On-disk artifacts: the services directory, the catalog and secret-key files,
//! and recovered cells.
//!
//! Service and output files are named `r<row>_c<col>.bin` with 1-based indices.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use rand::{CryptoRng, RngCore};

use crate::catalog::{self, EncryptedCatalog, PublicParams, SecretKey, MAX_SERVICE_LEN};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::group::ParameterSet;
use crate::transfer::RecoveredServices;

pub const CATALOG_FILE: &str = "catalog.olbsq";
pub const SECRET_KEY_FILE: &str = "secret.key";

pub fn cell_file_name(col: usize, row: usize) -> String {
    format!("r{row}_c{col}.bin")
}

/// Parses `r<row>_c<col>.bin`.
pub fn parse_cell_file_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('r')?.strip_suffix(".bin")?;
    let (row, col) = rest.split_once("_c")?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(row) || !digits(col) {
        return None;
    }
    Some((col.parse().ok()?, row.parse().ok()?))
}

/// Reads an `m x n` services grid from `dir`. Missing cells become empty
/// payloads; files that do not follow the naming scheme are skipped.
pub fn read_services_dir(dir: &Path, m: usize, n: usize) -> Result<Grid<Vec<u8>>> {
    if m == 0 || n == 0 {
        return Err(Error::argument("grid dimensions must be positive"));
    }
    let mut grid = Grid::from_fn(m, n, |_, _| Vec::new());
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let name = entry.file_name();
        let Some((col, row)) = name.to_str().and_then(parse_cell_file_name) else {
            warn!("ignoring {}", entry.path().display());
            continue;
        };
        if !(1..=m).contains(&col) || !(1..=n).contains(&row) {
            return Err(Error::argument(format!(
                "{} lies outside the {m}x{n} grid",
                entry.path().display()
            )));
        }
        if entry.metadata()?.len() > MAX_SERVICE_LEN as u64 {
            return Err(Error::argument(format!(
                "{} is larger than {MAX_SERVICE_LEN} bytes",
                entry.path().display()
            )));
        }
        *grid.get_mut(col, row).expect("checked in range") = fs::read(entry.path())?;
    }
    Ok(grid)
}

pub fn write_catalog(path: &Path, pp: &PublicParams, cat: &EncryptedCatalog) -> Result<()> {
    fs::write(path, catalog::encode_catalog(pp, cat))?;
    Ok(())
}

pub fn load_catalog(path: &Path) -> Result<(PublicParams, EncryptedCatalog)> {
    let bytes = fs::read(path)?;
    let (pp, cat) = catalog::decode_catalog(&bytes)?;
    pp.validate()?;
    Ok((pp, cat))
}

/// Writes the secret key readable by the owner only (mode 0600 on Unix).
pub fn write_secret_key(path: &Path, params: ParameterSet, sk: &SecretKey) -> Result<()> {
    let mut opts = fs::OpenOptions::new();
    opts.write(true).create(true).truncate(true);
    #[cfg(unix)]
    std::os::unix::fs::OpenOptionsExt::mode(&mut opts, 0o600);
    let mut file = opts.open(path)?;
    // The creation mode does not apply to a file that already existed.
    #[cfg(unix)]
    file.set_permissions(std::os::unix::fs::PermissionsExt::from_mode(0o600))?;
    file.write_all(&catalog::encode_secret_key(params, sk))?;
    Ok(())
}

pub fn load_secret_key(path: &Path) -> Result<(ParameterSet, SecretKey)> {
    Ok(catalog::decode_secret_key(&fs::read(path)?)?)
}

/// Paths written by [`setup_dir`].
#[derive(Debug, Clone)]
pub struct SetupOutput {
    pub catalog: PathBuf,
    pub secret_key: PathBuf,
}

/// Reads `services_dir`, runs setup and writes the catalog and key into `out_dir`.
pub fn setup_dir<R: RngCore + CryptoRng>(
    params: ParameterSet,
    m: usize,
    n: usize,
    services_dir: &Path,
    out_dir: &Path,
    rng: &mut R,
) -> Result<SetupOutput> {
    let services = read_services_dir(services_dir, m, n)?;
    let (sk, pp, cat) = catalog::setup(params, &services, rng)?;
    fs::create_dir_all(out_dir)?;
    let out = SetupOutput {
        catalog: out_dir.join(CATALOG_FILE),
        secret_key: out_dir.join(SECRET_KEY_FILE),
    };
    write_secret_key(&out.secret_key, params, &sk)?;
    write_catalog(&out.catalog, &pp, &cat)?;
    Ok(out)
}

/// Writes every recovered cell as `r<row>_c<col>.bin` under `dir`.
pub fn write_recovered(dir: &Path, services: &RecoveredServices) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    services
        .iter()
        .map(|(cell, bytes)| {
            let path = dir.join(cell_file_name(cell.col, cell.row));
            fs::write(&path, bytes)?;
            Ok(path)
        })
        .collect()
}
