//! The correctness identities of the construction, each checked on its own
//! against an [`Instance`]. Both sides of every identity are computed
//! independently: one from the public commitments, the other from the secret
//! key and the user's randomness.

use olbsq::group::{pair, Scalar, TargetElement};

use super::Instance;

pub type Identity = fn(&Instance) -> bool;

fn s(v: usize) -> Scalar {
    Scalar::from(v as u64)
}

fn inv(v: Scalar) -> Scalar {
    v.invert().expect("nonzero denominator")
}

fn r(inst: &Instance, n: usize) -> Scalar {
    *inst.state.r(n)
}

fn x_pow(inst: &Instance, e: usize) -> Scalar {
    inst.world.sk.x.pow_u64(e as u64)
}

fn y_pow(inst: &Instance, e: usize) -> Scalar {
    inst.world.sk.y.pow_u64(e as u64)
}

fn gg(inst: &Instance) -> TargetElement {
    inst.world.pp.g1.self_pairing()
}

fn hh(inst: &Instance) -> TargetElement {
    inst.world.pp.h1.self_pairing()
}

fn f1(inst: &Instance) -> bool {
    let (pp, o, i) = (&inst.world.pp, &inst.omega, inst.state.i());
    let committed = pp.g_frak.pow(&r(inst, 3)) * pp.c(i).power;
    let opened = pp.g_frak.pow(&r(inst, 3)) * pp.g2.left.pow(&x_pow(inst, i));
    o.f1 == committed && o.f1 == opened
}

fn f2(inst: &Instance) -> bool {
    let (pp, o, i) = (&inst.world.pp, &inst.omega, inst.state.i());
    let opened = pp
        .g2
        .right
        .pow(&(r(inst, 4) * inv(inst.world.sk.alpha2 + x_pow(inst, i))));
    o.f2 == pp.c(i).signature.pow(&r(inst, 4)) && o.f2 == opened
}

fn j1(inst: &Instance) -> bool {
    let (pp, o, j) = (&inst.world.pp, &inst.omega, inst.state.j());
    let committed = pp.g_frak.pow(&r(inst, 5)) * pp.d(j).power;
    let opened = pp.g_frak.pow(&r(inst, 5)) * pp.h2.left.pow(&y_pow(inst, j));
    o.j1 == committed && o.j1 == opened
}

fn j2(inst: &Instance) -> bool {
    let (pp, o, j) = (&inst.world.pp, &inst.omega, inst.state.j());
    let opened = pp
        .h2
        .right
        .pow(&(r(inst, 6) * inv(inst.world.sk.beta2 + y_pow(inst, j))));
    o.j2 == pp.d(j).signature.pow(&r(inst, 6)) && o.j2 == opened
}

fn i1(inst: &Instance) -> bool {
    let (pp, o, i) = (&inst.world.pp, &inst.omega, inst.state.i());
    let opened = pp.g1.right.pow(&(r(inst, 7) * inv(inst.world.sk.alpha1 + s(i))));
    o.i1 == pp.gamma1(i).pow(&r(inst, 7)) && o.i1 == opened
}

fn i2(inst: &Instance) -> bool {
    let (pp, o, j) = (&inst.world.pp, &inst.omega, inst.state.j());
    let opened = pp.h1.right.pow(&(r(inst, 8) * inv(inst.world.sk.beta1 + s(j))));
    o.i2 == pp.gamma2(j).pow(&r(inst, 8)) && o.i2 == opened
}

fn i3(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let il = inst.state.i() + inst.state.l();
    let opened = pp.g1.right.pow(&(r(inst, 9) * inv(inst.world.sk.alpha1 + s(il))));
    o.i3 == pp.gamma1(il).pow(&r(inst, 9)) && o.i3 == opened
}

fn i4(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let jk = inst.state.j() + inst.state.k();
    let opened = pp.h1.right.pow(&(r(inst, 10) * inv(inst.world.sk.beta1 + s(jk))));
    o.i4 == pp.gamma2(jk).pow(&r(inst, 10)) && o.i4 == opened
}

fn membership_i1(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let lhs = pair(&pp.w1.inverse(), &o.i1);
    lhs == gg(inst).pow(&-r(inst, 7)) * pair(&pp.g1.left, &o.i1).pow(&s(inst.state.i()))
}

fn membership_i2(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let lhs = pair(&pp.w1p.inverse(), &o.i2);
    lhs == hh(inst).pow(&-r(inst, 8)) * pair(&pp.h1.left, &o.i2).pow(&s(inst.state.j()))
}

fn membership_i3(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let base = pair(&pp.g1.left, &o.i3);
    let lhs = pair(&pp.w1.inverse(), &o.i3) * base.pow(&-s(inst.state.l()));
    lhs == gg(inst).pow(&-r(inst, 9)) * base.pow(&s(inst.state.i()))
}

fn membership_i4(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let base = pair(&pp.h1.left, &o.i4);
    let lhs = pair(&pp.w1p.inverse(), &o.i4) * base.pow(&-s(inst.state.k()));
    lhs == hh(inst).pow(&-r(inst, 10)) * base.pow(&s(inst.state.j()))
}

fn signature_f(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    pair(&(o.f1 * pp.w2), &o.f2) == pair(&pp.g_frak, &o.f2).pow(&r(inst, 3)) * pp.g2.self_pairing().pow(&r(inst, 4))
}

fn signature_j(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    pair(&(o.j1 * pp.w2p), &o.j2) == pair(&pp.g_frak, &o.j2).pow(&r(inst, 5)) * pp.h2.self_pairing().pow(&r(inst, 6))
}

fn opening_e1(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    pair(&(o.e1 * pp.w1), &o.i1) == pair(&pp.g_frak, &o.i1).pow(&-r(inst, 1)) * gg(inst).pow(&r(inst, 7))
}

fn opening_e2(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    pair(&(o.e2 * pp.w1p), &o.i2) == pair(&pp.g_frak, &o.i2).pow(&-r(inst, 2)) * hh(inst).pow(&r(inst, 8))
}

fn opening_e1_shifted(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let shifted = o.e1 * pp.g1.left.pow(&s(inst.state.l())) * pp.w1;
    pair(&shifted, &o.i3) == pair(&pp.g_frak, &o.i3).pow(&-r(inst, 1)) * gg(inst).pow(&r(inst, 9))
}

fn opening_e2_shifted(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let shifted = o.e2 * pp.h1.left.pow(&s(inst.state.k())) * pp.w1p;
    pair(&shifted, &o.i4) == pair(&pp.g_frak, &o.i4).pow(&-r(inst, 2)) * hh(inst).pow(&r(inst, 10))
}

fn column_signatures(inst: &Instance) -> bool {
    let pp = &inst.world.pp;
    (1..=pp.m).all(|mu| {
        let c2 = pp.c(mu).signature;
        pair(&pp.w2, &c2) / pp.g2.self_pairing() == pair(&pp.g2.left, &c2).pow(&-x_pow(inst, mu))
    })
}

fn row_signatures(inst: &Instance) -> bool {
    let pp = &inst.world.pp;
    (1..=pp.n).all(|nu| {
        let d2 = pp.d(nu).signature;
        pair(&pp.w2p, &d2) / pp.h2.self_pairing() == pair(&pp.h2.left, &d2).pow(&-y_pow(inst, nu))
    })
}

fn cells(inst: &Instance) -> impl Iterator<Item = (usize, usize)> {
    let (l, k) = (inst.state.l(), inst.state.k());
    (1..=k).flat_map(move |nu| (1..=l).map(move |mu| (mu, nu)))
}

fn key_expansion(inst: &Instance) -> bool {
    let (pp, o) = (&inst.world.pp, &inst.omega);
    let (i, j) = (inst.state.i(), inst.state.j());
    cells(inst).all(|(mu, nu)| {
        let k = *inst.keys.k_cell(mu, nu);
        let from_commitments = o.e1
            * pp.g1.left.pow(&s(mu))
            * o.e2
            * pp.h1.left.pow(&s(nu))
            * o.f1.pow(&x_pow(inst, mu))
            * o.j1.pow(&y_pow(inst, nu));
        let blind = -(r(inst, 1) + r(inst, 2)) + r(inst, 3) * x_pow(inst, mu) + r(inst, 5) * y_pow(inst, nu);
        let expanded = pp.g_frak.pow(&blind)
            * pp.g1.left.pow(&s(i + mu))
            * pp.h1.left.pow(&s(j + nu))
            * pp.g2.left.pow(&x_pow(inst, i + mu))
            * pp.h2.left.pow(&y_pow(inst, j + nu));
        k == from_commitments && k == expanded
    })
}

fn l_expansion(inst: &Instance) -> bool {
    let (pp, cat) = (&inst.world.pp, &inst.world.cat);
    let h_frak = &inst.world.sk.h_frak;
    let (i, j) = (inst.state.i(), inst.state.j());
    cells(inst).all(|(mu, nu)| {
        let l = *inst.keys.l_cell(mu, nu);
        let expanded = pp.big_h.pow(&-(r(inst, 1) + r(inst, 2)))
            * pp.big_h.pow(&(r(inst, 3) * x_pow(inst, mu)))
            * pp.big_h.pow(&(r(inst, 5) * y_pow(inst, nu)))
            * pair(cat.a.at(i + mu, j + nu), h_frak);
        l == pair(inst.keys.k_cell(mu, nu), h_frak) && l == expanded
    })
}

fn unblinded_key(inst: &Instance, mu: usize, nu: usize) -> TargetElement {
    let pp = &inst.world.pp;
    let blind =
        pp.big_h.pow(&-(r(inst, 1) + r(inst, 2))) * pp.c(mu).target.pow(&r(inst, 3)) * pp.d(nu).target.pow(&r(inst, 5));
    *inst.keys.l_cell(mu, nu) / blind
}

fn p_expansion(inst: &Instance) -> bool {
    let (i, j) = (inst.state.i(), inst.state.j());
    cells(inst)
        .all(|(mu, nu)| unblinded_key(inst, mu, nu) == pair(inst.world.cat.a.at(i + mu, j + nu), &inst.world.sk.h_frak))
}

fn message_recovery(inst: &Instance) -> bool {
    let w = &inst.world;
    let (i, j) = (inst.state.i(), inst.state.j());
    cells(inst).all(|(mu, nu)| {
        let (col, row) = (i + mu, j + nu);
        let mask = *w.cat.b.at(col, row) / unblinded_key(inst, mu, nu);
        let direct = olbsq::catalog::decrypt_direct(&w.sk, &w.cat, col, row).expect("in range");
        mask == direct.mask
            && olbsq::catalog::unwrap_payload(&mask, w.cat.payload.at(col, row))
                .ok()
                .as_ref()
                == Some(w.services.at(col, row))
    })
}

pub const ALL: &[(&str, Identity)] = &[
    ("F1 = gfrak^r3 C_i1 = gfrak^r3 g2^(x^i)", f1),
    ("F2 = C_i2^r4 = g2^(r4/(alpha2+x^i))", f2),
    ("J1 = gfrak^r5 D_j1 = gfrak^r5 h2^(y^j)", j1),
    ("J2 = D_j2^r6 = h2^(r6/(beta2+y^j))", j2),
    ("I1 = Gamma1_i^r7 = g1^(r7/(alpha1+i))", i1),
    ("I2 = Gamma2_j^r8 = h1^(r8/(beta1+j))", i2),
    ("I3 = Gamma1_(i+l)^r9 = g1^(r9/(alpha1+i+l))", i3),
    ("I4 = Gamma2_(j+k)^r10 = h1^(r10/(beta1+j+k))", i4),
    ("e(W1^-1, I1) = e(g1,g1)^-r7 e(g1,I1)^i", membership_i1),
    ("e(W1'^-1, I2) = e(h1,h1)^-r8 e(h1,I2)^j", membership_i2),
    ("e(W1^-1, I3) e(g1,I3)^-l = e(g1,g1)^-r9 e(g1,I3)^i", membership_i3),
    ("e(W1'^-1, I4) e(h1,I4)^-k = e(h1,h1)^-r10 e(h1,I4)^j", membership_i4),
    ("e(F1 W2, F2) = e(gfrak,F2)^r3 e(g2,g2)^r4", signature_f),
    ("e(J1 W2', J2) = e(gfrak,J2)^r5 e(h2,h2)^r6", signature_j),
    ("e(E1 W1, I1) = e(gfrak,I1)^-r1 e(g1,g1)^r7", opening_e1),
    ("e(E2 W1', I2) = e(gfrak,I2)^-r2 e(h1,h1)^r8", opening_e2),
    ("e(E1 g1^l W1, I3) = e(gfrak,I3)^-r1 e(g1,g1)^r9", opening_e1_shifted),
    ("e(E2 h1^k W1', I4) = e(gfrak,I4)^-r2 e(h1,h1)^r10", opening_e2_shifted),
    ("e(C_mu2, W2) / e(g2,g2) = e(C_mu2, g2)^-(x^mu)", column_signatures),
    ("e(D_nu2, W2') / e(h2,h2) = e(D_nu2, h2)^-(y^nu)", row_signatures),
    (
        "K = E1 g1^mu E2 h1^nu F1^(x^mu) J1^(y^nu) = expanded form",
        key_expansion,
    ),
    (
        "L = e(K, hfrak) = H^-(r1+r2) H^(r3 x^mu) H^(r5 y^nu) e(A, hfrak)",
        l_expansion,
    ),
    ("P = L / (H^-(r1+r2) C_mu3^r3 D_nu3^r5) = e(A, hfrak)", p_expansion),
    ("B / P = M", message_recovery),
];
