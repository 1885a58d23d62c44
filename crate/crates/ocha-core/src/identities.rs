//! The proved interaction laws of the calculus, packaged as checkable
//! identities.
//!
//! Each checker assembles both sides exactly under an output arity cap and
//! compares structure constants.  Intermediate results are assembled under a
//! widened cap so that every compared component is exact: an output
//! component `(l, k)` of any operation here reads its inputs only at
//! `l' ≤ l` and `k' ≤ k + 4` (at most four open slots are consumed
//! downstream in any of these identities).
//!
//! A check is *vacuous* when both sides are zero below the cap; callers that
//! use these as test campaigns should track that.

use alloc::vec::Vec;

use crate::brace::{brace, hat_action, ArityCap};
use crate::cochain::{DegreeKind, OCCochain, SymCochain};
use crate::error::CoreError;
use crate::scalar::{Scalar, Sign};
use crate::structures::{
    cup, gerstenhaber_bracket, hochschild_differential, m_structure, OchaStructure,
};

/// Result of checking one identity instance.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub holds: bool,
    /// False when both compared sides vanish below the cap.
    pub nonvacuous: bool,
    /// `lhs − rhs`; zero exactly when the identity holds below the cap.
    pub defect: OCCochain,
}

fn finish(lhs: OCCochain, rhs: OCCochain) -> Result<IdentityCheck, CoreError> {
    let nonvacuous = !lhs.is_zero() || !rhs.is_zero();
    let defect = lhs.sub(&rhs)?;
    Ok(IdentityCheck {
        holds: defect.is_zero(),
        nonvacuous,
        defect,
    })
}

/// Widens a cap for an intermediate result that will afterwards be read by
/// operations consuming up to `headroom` open slots.
fn inner(cap: Option<ArityCap>, headroom: u32) -> Option<ArityCap> {
    cap.map(|c| c.widen_open(headroom))
}

fn homogeneous_degree(d: &OCCochain, context: &'static str) -> Result<i64, CoreError> {
    match d.degree() {
        DegreeKind::Homogeneous(deg) => Ok(deg),
        DegreeKind::Zero => Ok(0),
        DegreeKind::Mixed => Err(CoreError::Inhomogeneous { context }),
    }
}

/// The brace relation: composing two braces expands into a signed sum of
/// single braces with the later arguments nested into the earlier ones,
///
/// `D{E_1,…,E_m}{F_1,…,F_n} = Σ ± D{F_1,…,E_1{F_{i_1+1},…,F_{j_1}},…,F_n}`
///
/// summed over `0 ≤ i_1 ≤ j_1 ≤ ⋯ ≤ i_m ≤ j_m ≤ n`, with sign exponent
/// `Σ_k |E_k|·(|F_1|+⋯+|F_{i_k}|)`.
pub fn brace_relation(
    d: &OCCochain,
    es: &[&OCCochain],
    fs: &[&OCCochain],
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let m = es.len();
    let n = fs.len();
    let e_deg: Vec<i64> = es
        .iter()
        .map(|e| homogeneous_degree(e, "brace relation argument"))
        .collect::<Result<_, _>>()?;
    let f_deg: Vec<i64> = fs
        .iter()
        .map(|f| homogeneous_degree(f, "brace relation argument"))
        .collect::<Result<_, _>>()?;

    let lhs_inner = brace(d, es, inner(cap, n as u32))?;
    let lhs = brace(&lhs_inner, fs, cap)?;

    let mut rhs = OCCochain::zero(d.closed_space(), d.open_space(), d.target_space());
    let mut indices = Vec::with_capacity(2 * m);
    enumerate_nestings(m, n, 0, &mut indices, &mut |pairs: &[(usize, usize)]| {
        // Assemble D{F_1..F_{i_1}, E_1{F_{i_1+1}..F_{j_1}}, ...}.
        let mut args: Vec<OCCochain> = Vec::new();
        let mut parity = 0i64;
        let mut cursor = 0usize;
        for (k, &(i_k, j_k)) in pairs.iter().enumerate() {
            for f_idx in cursor..i_k {
                args.push((*fs[f_idx]).clone());
            }
            let nested_refs: Vec<&OCCochain> = fs[i_k..j_k].to_vec();
            let nested = brace(es[k], &nested_refs, inner(cap, (m + n) as u32))?;
            args.push(nested);
            parity += e_deg[k] * f_deg[..i_k].iter().sum::<i64>();
            cursor = j_k;
        }
        for f_idx in cursor..n {
            args.push((*fs[f_idx]).clone());
        }
        let arg_refs: Vec<&OCCochain> = args.iter().collect();
        let term = brace(d, &arg_refs, cap)?.scale(&Sign::from_parity(parity).scalar());
        rhs = rhs.add(&term)?;
        Ok(())
    })?;
    finish(lhs, rhs)
}

/// Enumerates all `0 ≤ i_1 ≤ j_1 ≤ ⋯ ≤ i_m ≤ j_m ≤ n`.
fn enumerate_nestings<F>(
    m: usize,
    n: usize,
    low: usize,
    acc: &mut Vec<(usize, usize)>,
    f: &mut F,
) -> Result<(), CoreError>
where
    F: FnMut(&[(usize, usize)]) -> Result<(), CoreError>,
{
    if acc.len() == m {
        return f(acc);
    }
    for i in low..=n {
        for j in i..=n {
            acc.push((i, j));
            enumerate_nestings(m, n, j, acc, f)?;
            acc.pop();
        }
    }
    Ok(())
}

/// How the closed-string action interacts with braces, for an arbitrary
/// homogeneous closed-string cochain `l` (no L-infinity condition):
///
/// `l̂(D{E_1,…,E_m}) = (−1)^{|l|Σ|E_i|} l̂(D){E_1,…,E_m}
///  + Σ_i (−1)^{|l|Σ_{j>i}|E_j|} D{E_1,…,l̂(E_i),…,E_m}`.
pub fn hat_brace(
    lc: &SymCochain,
    d: &OCCochain,
    es: &[&OCCochain],
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let m = es.len();
    let l_deg = match lc.degree() {
        DegreeKind::Homogeneous(deg) => deg,
        DegreeKind::Zero => 0,
        DegreeKind::Mixed => {
            return Err(CoreError::Inhomogeneous { context: "closed-string cochain" })
        }
    };
    let e_deg: Vec<i64> = es
        .iter()
        .map(|e| homogeneous_degree(e, "hat-brace argument"))
        .collect::<Result<_, _>>()?;

    let lhs = hat_action(lc, &brace(d, es, cap)?, cap)?;

    let total_e: i64 = e_deg.iter().sum();
    let hat_d = hat_action(lc, d, inner(cap, m as u32))?;
    let mut rhs =
        brace(&hat_d, es, cap)?.scale(&Sign::from_parity(l_deg * total_e).scalar());
    for i in 0..m {
        let tail: i64 = e_deg[i + 1..].iter().sum();
        let hat_e = hat_action(lc, es[i], cap)?;
        let mut args: Vec<&OCCochain> = Vec::with_capacity(m);
        for (j, e) in es.iter().enumerate() {
            if j == i {
                args.push(&hat_e);
            } else {
                args.push(e);
            }
        }
        let term = brace(d, &args, cap)?.scale(&Sign::from_parity(l_deg * tail).scalar());
        rhs = rhs.add(&term)?;
    }
    finish(lhs, rhs)
}

/// `l̂ ∘ l̂ = 0` for a validated L-infinity structure applied to any cochain.
pub fn hat_squared(
    lc: &SymCochain,
    d: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let once = hat_action(lc, d, cap)?;
    let nonvacuous = !once.is_zero();
    let twice = hat_action(lc, &once, cap)?;
    Ok(IdentityCheck {
        holds: twice.is_zero(),
        nonvacuous,
        defect: twice,
    })
}

/// `δ∘δ = 0` over a validated OCHA.
pub fn delta_squared(
    ocha: &OchaStructure,
    d: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let once = hochschild_differential(ocha, d, inner(cap, 1))?;
    let nonvacuous = !once.is_zero();
    let twice = hochschild_differential(ocha, &once, cap)?;
    Ok(IdentityCheck {
        holds: twice.is_zero(),
        nonvacuous,
        defect: twice,
    })
}

/// The A-infinity relation for the induced family `M` at total arity
/// `ds.len()`:
/// `Σ (−1)^{|D_1|+⋯+|D_i|} M(D_1,…,D_i, M(D_{i+1},…,D_{i+k_2}), …) = 0`.
pub fn m_relation(
    ocha: &OchaStructure,
    ds: &[&OCCochain],
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let k = ds.len();
    if k == 0 {
        return Err(CoreError::ForbiddenArity { l: 0, k: 0 });
    }
    let deg: Vec<i64> = ds
        .iter()
        .map(|d| homogeneous_degree(d, "induced structure argument"))
        .collect::<Result<_, _>>()?;
    let mut total =
        OCCochain::zero(ds[0].closed_space(), ds[0].open_space(), ds[0].target_space());
    let mut nonvacuous = false;
    for k2 in 1..=k {
        for i in 0..=(k - k2) {
            let inner_args: Vec<&OCCochain> = ds[i..i + k2].to_vec();
            let inner_val = m_structure(ocha, &inner_args, inner(cap, k as u32))?;
            let mut outer_args: Vec<&OCCochain> = Vec::with_capacity(k - k2 + 1);
            outer_args.extend(&ds[..i]);
            outer_args.push(&inner_val);
            outer_args.extend(&ds[i + k2..]);
            let term = m_structure(ocha, &outer_args, cap)?;
            if !term.is_zero() {
                nonvacuous = true;
            }
            let parity: i64 = deg[..i].iter().sum();
            total = total.add(&term.scale(&Sign::from_parity(parity).scalar()))?;
        }
    }
    Ok(IdentityCheck {
        holds: total.is_zero(),
        nonvacuous,
        defect: total,
    })
}

/// Graded Jacobi for the Gerstenhaber bracket:
/// `[D_0,[D_1,D_2]] = [[D_0,D_1],D_2] + (−1)^{|D_0||D_1|}[D_1,[D_0,D_2]]`.
pub fn bracket_jacobi(
    d0: &OCCochain,
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let p0 = homogeneous_degree(d0, "bracket argument")?;
    let p1 = homogeneous_degree(d1, "bracket argument")?;
    let lhs = gerstenhaber_bracket(d0, &gerstenhaber_bracket(d1, d2, inner(cap, 2))?, cap)?;
    let first = gerstenhaber_bracket(&gerstenhaber_bracket(d0, d1, inner(cap, 2))?, d2, cap)?;
    let second = gerstenhaber_bracket(d1, &gerstenhaber_bracket(d0, d2, inner(cap, 2))?, cap)?
        .scale(&Sign::from_parity(p0 * p1).scalar());
    finish(lhs, first.add(&second)?)
}

/// Compatibility of the closed-string action with the bracket, for a
/// degree-1 closed structure:
/// `l̂([D_1,D_2]) = (−1)^{|D_2|}[l̂(D_1),D_2] + [D_1,l̂(D_2)]`.
pub fn hat_bracket(
    lc: &SymCochain,
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let p2 = homogeneous_degree(d2, "bracket argument")?;
    let lhs = hat_action(lc, &gerstenhaber_bracket(d1, d2, cap)?, cap)?;
    let first = gerstenhaber_bracket(&hat_action(lc, d1, inner(cap, 2))?, d2, cap)?
        .scale(&Sign::from_parity(p2).scalar());
    let second = gerstenhaber_bracket(d1, &hat_action(lc, d2, inner(cap, 2))?, cap)?;
    finish(lhs, first.add(&second)?)
}

/// The Leibniz rule of the differential for the cup product:
/// `δ(D_1⌣D_2) = δ(D_1)⌣D_2 + (−1)^{|D_1|+1} D_1⌣δ(D_2)`.
pub fn cup_leibniz(
    ocha: &OchaStructure,
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let p1 = homogeneous_degree(d1, "cup argument")?;
    let lhs = hochschild_differential(ocha, &cup(ocha, d1, d2, inner(cap, 2))?, cap)?;
    let dd1 = hochschild_differential(ocha, d1, inner(cap, 2))?;
    let dd2 = hochschild_differential(ocha, d2, inner(cap, 2))?;
    let first = cup(ocha, &dd1, d2, cap)?;
    let second = cup(ocha, d1, &dd2, cap)?.scale(&Sign::from_parity(p1 + 1).scalar());
    finish(lhs, first.add(&second)?)
}

/// The chain-level commutativity homotopy behind graded commutativity of the
/// cup product on cohomology:
/// `(−1)^{|D_1|}(D_1⌣D_2 − (−1)^{(|D_1|+1)(|D_2|+1)} D_2⌣D_1)
///  = δ(D_1{D_2}) − δ(D_1){D_2} − (−1)^{|D_1|} D_1{δ(D_2)}`.
pub fn commutativity_homotopy(
    ocha: &OchaStructure,
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let p1 = homogeneous_degree(d1, "cup argument")?;
    let p2 = homogeneous_degree(d2, "cup argument")?;
    let cup12 = cup(ocha, d1, d2, cap)?;
    let cup21 = cup(ocha, d2, d1, cap)?
        .scale(&(-Sign::from_parity((p1 + 1) * (p2 + 1))).scalar());
    let lhs = cup12.add(&cup21)?.scale(&Sign::from_parity(p1).scalar());

    let dd1 = hochschild_differential(ocha, d1, inner(cap, 2))?;
    let dd2 = hochschild_differential(ocha, d2, inner(cap, 2))?;
    let term_a = hochschild_differential(ocha, &brace(d1, &[d2], inner(cap, 2))?, cap)?;
    let term_b = brace(&dd1, &[d2], cap)?.scale(&(-Scalar::one()));
    let term_c = brace(d1, &[&dd2], cap)?.scale(&(-Sign::from_parity(p1)).scalar());
    finish(lhs, term_a.add(&term_b)?.add(&term_c)?)
}

/// The chain-level Leibniz homotopy behind the Leibniz rule on cohomology:
/// for homogeneous `D_1, D_2, D_3`,
/// `(−1)^{|D_1|+|D_2|}([D_1, D_2⌣D_3] − [D_1,D_2]⌣D_3
///   − (−1)^{|D_1|(|D_2|+1)} D_2⌣[D_1,D_3]) + δ(D_1{D_2,D_3})
///  = δ(D_1){D_2,D_3} + (−1)^{|D_1|} D_1{δ(D_2),D_3}
///   + (−1)^{|D_1|+|D_2|} D_1{D_2,δ(D_3)}`.
pub fn leibniz_homotopy(
    ocha: &OchaStructure,
    d1: &OCCochain,
    d2: &OCCochain,
    d3: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let p1 = homogeneous_degree(d1, "Leibniz argument")?;
    let p2 = homogeneous_degree(d2, "Leibniz argument")?;
    let cup23 = cup(ocha, d2, d3, inner(cap, 2))?;
    let defect_a = gerstenhaber_bracket(d1, &cup23, cap)?;
    let defect_b = cup(ocha, &gerstenhaber_bracket(d1, d2, inner(cap, 2))?, d3, cap)?
        .scale(&(-Scalar::one()));
    let defect_c = cup(ocha, d2, &gerstenhaber_bracket(d1, d3, inner(cap, 2))?, cap)?
        .scale(&(-Sign::from_parity(p1 * (p2 + 1))).scalar());
    let defect = defect_a
        .add(&defect_b)?
        .add(&defect_c)?
        .scale(&Sign::from_parity(p1 + p2).scalar());
    let lhs = defect.add(&hochschild_differential(
        ocha,
        &brace(d1, &[d2, d3], inner(cap, 2))?,
        cap,
    )?)?;

    let dd1 = hochschild_differential(ocha, d1, inner(cap, 2))?;
    let dd2 = hochschild_differential(ocha, d2, inner(cap, 2))?;
    let dd3 = hochschild_differential(ocha, d3, inner(cap, 2))?;
    let rhs = brace(&dd1, &[d2, d3], cap)?
        .add(&brace(d1, &[&dd2, d3], cap)?.scale(&Sign::from_parity(p1).scalar()))?
        .add(&brace(d1, &[d2, &dd3], cap)?.scale(&Sign::from_parity(p1 + p2).scalar()))?;
    finish(lhs, rhs)
}

/// The derivation property of the differential over the bracket:
/// `δ([D_1,D_2]) = [δ(D_1),D_2] + (−1)^{|D_1|}[D_1,δ(D_2)]`.
pub fn delta_bracket_derivation(
    ocha: &OchaStructure,
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<IdentityCheck, CoreError> {
    let p1 = homogeneous_degree(d1, "bracket argument")?;
    let lhs =
        hochschild_differential(ocha, &gerstenhaber_bracket(d1, d2, inner(cap, 2))?, cap)?;
    let dd1 = hochschild_differential(ocha, d1, inner(cap, 2))?;
    let dd2 = hochschild_differential(ocha, d2, inner(cap, 2))?;
    let first = gerstenhaber_bracket(&dd1, d2, cap)?;
    let second =
        gerstenhaber_bracket(d1, &dd2, cap)?.scale(&Sign::from_parity(p1).scalar());
    finish(lhs, first.add(&second)?)
}
