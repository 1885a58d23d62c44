//! Homotopy-algebra structures and their validators.
//!
//! The axioms are complete equalities here, not truncations: every structure
//! is finitely supported, so each defect cochain is assembled exactly and
//! compared to zero.  Failing checks report the offending structure
//! constants as sorted witness lines.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::brace::{brace, hat_action, sym_brace, sym_compose, ArityCap};
use crate::cochain::{DegreeKind, OCCochain, SymCochain};
use crate::error::CoreError;
use crate::graded::{same_space, Vector};
use crate::scalar::{Scalar, Sign};

/// Outcome of an axiom check: pass, or a deterministic list of witnesses
/// (sorted smallest-first), together with the arity window that was actually
/// enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub passed: bool,
    pub checked_window: (u32, u32),
    pub failures: Vec<String>,
}

impl Report {
    fn pass(window: (u32, u32)) -> Self {
        Report {
            passed: true,
            checked_window: window,
            failures: Vec::new(),
        }
    }

    fn fail(window: (u32, u32), failures: Vec<String>) -> Self {
        Report {
            passed: false,
            checked_window: window,
            failures,
        }
    }
}

fn degree_failures_oc(c: &OCCochain, expected: i64) -> Vec<String> {
    let mut out = Vec::new();
    for (&(l, k), comp) in c.components() {
        for (key, target) in comp {
            for (&o, _) in target {
                let d = c.entry_degree(key, o);
                if d != expected {
                    out.push(format!(
                        "entry at ({l},{k}) has shifted degree {d}, expected {expected}"
                    ));
                }
            }
        }
    }
    out.sort();
    out
}

fn degree_failures_sym(c: &SymCochain, expected: i64) -> Vec<String> {
    let mut out = Vec::new();
    for (l, comp) in c.components() {
        for (word, target) in comp {
            for (&o, _) in target {
                let d = c.entry_degree(word, o);
                if d != expected {
                    out.push(format!(
                        "entry at ({l}) has shifted degree {d}, expected {expected}"
                    ));
                }
            }
        }
    }
    out.sort();
    out
}

/// Checks the A-infinity axiom `m{m} = 0` for an open-only cochain of
/// shifted degree 1.  Closed-arity components are rejected as errors.
pub fn check_a_infinity(m: &OCCochain) -> Result<Report, CoreError> {
    if m.support().iter().any(|&(l, _)| l != 0) {
        return Err(CoreError::NotOpenOnly);
    }
    let k_max = m.max_open_arity().unwrap_or(0);
    let window = (0, if k_max > 0 { 2 * k_max - 1 } else { 0 });
    let mut failures = degree_failures_oc(m, 1);
    let defect = brace(m, &[m], None)?;
    failures.extend(defect.render_entries());
    if failures.is_empty() {
        Ok(Report::pass(window))
    } else {
        Ok(Report::fail(window, failures))
    }
}

/// Checks the L-infinity axiom `l⟨l⟩ = 0` for a closed-string cochain of
/// shifted degree 1.
pub fn check_l_infinity(lc: &SymCochain) -> Result<Report, CoreError> {
    if !lc.is_endo() {
        return Err(CoreError::SpaceMismatch { context: "L-infinity check" });
    }
    let l_max = lc.max_arity().unwrap_or(0);
    let window = (if l_max > 0 { 2 * l_max - 1 } else { 0 }, 0);
    let mut failures = degree_failures_sym(lc, 1);
    let defect = sym_brace(lc, &[lc], None)?;
    failures.extend(defect.render_entries());
    if failures.is_empty() {
        Ok(Report::pass(window))
    } else {
        Ok(Report::fail(window, failures))
    }
}

/// A validated open-closed homotopy algebra: an L-infinity structure on the
/// closed side plus a degree-1 open-closed cochain `q` with
/// `q{q} = l̂(q)`.  The differentials are part of the data:
/// `q_{0,1}` is the open differential and `l_1` the closed one.
#[derive(Debug, Clone)]
pub struct OchaStructure {
    l: SymCochain,
    q: OCCochain,
    checked_window: (u32, u32),
}

impl OchaStructure {
    pub fn l(&self) -> &SymCochain {
        &self.l
    }

    pub fn q(&self) -> &OCCochain {
        &self.q
    }

    pub fn checked_window(&self) -> (u32, u32) {
        self.checked_window
    }
}

/// Result of [`check_ocha`]: the report, plus the packaged structure when
/// every axiom holds.
#[derive(Debug, Clone)]
pub struct OchaCheck {
    pub report: Report,
    pub structure: Option<OchaStructure>,
}

/// Validates the OCHA axioms for a pair `(l, q)`:
/// the L-infinity axiom for `l`, `|q| = 1`, and `q{q} − l̂(q) = 0`.
/// Since the data is finitely supported the comparison is complete; the
/// returned window records the arities enumerated.
pub fn check_ocha(lc: &SymCochain, q: &OCCochain) -> Result<OchaCheck, CoreError> {
    if !lc.is_endo() || !same_space(lc.source(), q.closed_space()) {
        return Err(CoreError::SpaceMismatch { context: "OCHA check" });
    }
    if !same_space(q.open_space(), q.target_space()) {
        return Err(CoreError::SpaceMismatch { context: "OCHA check (q must target its own open space)" });
    }
    let l_report = check_l_infinity(lc)?;
    let mut failures: Vec<String> = l_report
        .failures
        .iter()
        .map(|f| format!("closed structure: {f}"))
        .collect();
    failures.extend(degree_failures_oc(q, 1));
    let q_l = q.max_closed_arity().unwrap_or(0);
    let q_k = q.max_open_arity().unwrap_or(0);
    let window = (
        (2 * q_l).max(q_l.saturating_sub(1) + lc.max_arity().unwrap_or(0)),
        (2 * q_k).saturating_sub(1),
    );
    let defect = brace(q, &[q], None)?.sub(&hat_action(lc, q, None)?)?;
    failures.extend(defect.render_entries());
    failures.sort();
    if failures.is_empty() {
        Ok(OchaCheck {
            report: Report::pass(window),
            structure: Some(OchaStructure {
                l: lc.clone(),
                q: q.clone(),
                checked_window: window,
            }),
        })
    } else {
        Ok(OchaCheck {
            report: Report::fail(window, failures),
            structure: None,
        })
    }
}

/// Morphism data for the two flavours of structure maps.
pub enum MorphismData<'a> {
    /// An A-infinity morphism `f: (A, m) → (A', m')`, an open-only cochain of
    /// shifted degree 0.
    AInfinity {
        f: &'a OCCochain,
        source: &'a OCCochain,
        target: &'a OCCochain,
    },
    /// An L-infinity morphism `k: (B, l) → (B', l')` of shifted degree 0,
    /// satisfying `l'·k = k⟨l⟩`.
    LInfinity {
        k: &'a SymCochain,
        source: &'a SymCochain,
        target: &'a SymCochain,
    },
}

/// Checks the defining equation of a morphism on all basis inputs up to the
/// arity bound implied by the supports.
pub fn check_morphism(data: &MorphismData) -> Result<Report, CoreError> {
    match data {
        MorphismData::AInfinity { f, source, target } => {
            check_a_infinity_morphism(f, source, target)
        }
        MorphismData::LInfinity { k, source, target } => {
            check_l_infinity_morphism(k, source, target)
        }
    }
}

fn check_a_infinity_morphism(
    f: &OCCochain,
    m_src: &OCCochain,
    m_tgt: &OCCochain,
) -> Result<Report, CoreError> {
    if f.support().iter().any(|&(l, _)| l != 0) {
        return Err(CoreError::NotOpenOnly);
    }
    if !same_space(f.open_space(), m_src.open_space())
        || !same_space(f.target_space(), m_tgt.open_space())
    {
        return Err(CoreError::SpaceMismatch { context: "A-infinity morphism" });
    }
    match f.degree() {
        DegreeKind::Homogeneous(0) | DegreeKind::Zero => {}
        _ => return Err(CoreError::WrongDegree { expected: 0, context: "A-infinity morphism" }),
    }
    let f_max = f.max_open_arity().unwrap_or(0);
    let lhs_bound = f_max * m_tgt.max_open_arity().unwrap_or(0);
    let rhs_bound = f_max + m_src.max_open_arity().unwrap_or(0);
    let bound = lhs_bound.max(rhs_bound).max(1);
    let a = m_src.open_space();
    let mut failures = Vec::new();
    for k in 1..=bound {
        for tuple in crate::cochain::open_tuples(a, k) {
            let lhs = evaluate_a_morphism_lhs(f, m_tgt, &tuple)?;
            let rhs = evaluate_a_morphism_rhs(f, m_src, &tuple)?;
            let diff = lhs.add(&rhs.scale(&Scalar::from_int(-1)))?;
            if !diff.is_zero() {
                let labels: Vec<&str> = tuple.iter().map(|&i| a.label(i)).collect();
                failures.push(format!(
                    "arity {k} input [{}]: defect {diff}",
                    labels.join(" ")
                ));
            }
        }
    }
    failures.sort();
    let window = (0, bound);
    if failures.is_empty() {
        Ok(Report::pass(window))
    } else {
        Ok(Report::fail(window, failures))
    }
}

/// Left side `Σ m'(f(x_{I_1}), …, f(x_{I_r}))` over dotted partitions into
/// nonempty intervals; `|f| = 0` so no Koszul signs appear.
fn evaluate_a_morphism_lhs(
    f: &OCCochain,
    m_tgt: &OCCochain,
    tuple: &[u32],
) -> Result<Vector, CoreError> {
    let a = f.open_space();
    let a_tgt = f.target_space();
    let k = tuple.len();
    let mut total = Vector::zero(m_tgt.target_space());
    for r in 1..=k {
        for dotted in crate::combinatorics::dotted_partitions(k, r) {
            if dotted.blocks.iter().any(|&(s, e)| s == e) {
                continue;
            }
            let mut values = Vec::with_capacity(r);
            for &(s, e) in &dotted.blocks {
                let vecs: Vec<Vector> = (s..e)
                    .map(|p| Vector::basis(a, tuple[p]))
                    .collect::<Result<_, _>>()?;
                values.push(f.evaluate(&[], &vecs)?);
            }
            let _ = a_tgt;
            total = total.add(&m_tgt.evaluate(&[], &values)?)?;
        }
    }
    Ok(total)
}

/// Right side `Σ (−1)^{|x_I|} f(x_I, m(x_J), x_K)` over dotted splits.
fn evaluate_a_morphism_rhs(
    f: &OCCochain,
    m_src: &OCCochain,
    tuple: &[u32],
) -> Result<Vector, CoreError> {
    let a = f.open_space();
    let k = tuple.len();
    let mut total = Vector::zero(f.target_space());
    for dotted in crate::combinatorics::dotted_partitions(k, 3) {
        let (js, je) = dotted.blocks[1];
        if js == je {
            continue;
        }
        let inner_vecs: Vec<Vector> = (js..je)
            .map(|p| Vector::basis(a, tuple[p]))
            .collect::<Result<_, _>>()?;
        let inner = m_src.evaluate(&[], &inner_vecs)?;
        let mut open_vecs = Vec::new();
        let (is_, ie_) = dotted.blocks[0];
        let mut prefix_parity = 0i64;
        for p in is_..ie_ {
            prefix_parity += a.shifted_degree(tuple[p]) & 1;
            open_vecs.push(Vector::basis(a, tuple[p])?);
        }
        open_vecs.push(inner);
        let (ks_, ke_) = dotted.blocks[2];
        for p in ks_..ke_ {
            open_vecs.push(Vector::basis(a, tuple[p])?);
        }
        let value = f.evaluate(&[], &open_vecs)?;
        total = total.add(&value.scale(&Sign::from_parity(prefix_parity).scalar()))?;
    }
    Ok(total)
}

fn check_l_infinity_morphism(
    k: &SymCochain,
    l_src: &SymCochain,
    l_tgt: &SymCochain,
) -> Result<Report, CoreError> {
    if !same_space(k.source(), l_src.source()) || !same_space(k.target(), l_tgt.source()) {
        return Err(CoreError::SpaceMismatch { context: "L-infinity morphism" });
    }
    match k.degree() {
        DegreeKind::Homogeneous(0) | DegreeKind::Zero => {}
        _ => return Err(CoreError::WrongDegree { expected: 0, context: "L-infinity morphism" }),
    }
    let lhs = sym_compose(l_tgt, k, None)?;
    let rhs = sym_brace(k, &[l_src], None)?;
    let defect = lhs.sub(&rhs)?;
    let window = (
        lhs.max_arity()
            .unwrap_or(0)
            .max(rhs.max_arity().unwrap_or(0)),
        0,
    );
    if defect.is_zero() {
        Ok(Report::pass(window))
    } else {
        Ok(Report::fail(window, defect.render_entries()))
    }
}

/// The open-closed Hochschild differential
/// `δ(D) = q{D} − (−1)^{|D|} D{q} + (−1)^{|D|} l̂(D)`,
/// applied per homogeneous part of `D`.  Raises shifted degree by one.
pub fn hochschild_differential(
    ocha: &OchaStructure,
    d: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    let q = &ocha.q;
    let mut total = OCCochain::zero(d.closed_space(), d.open_space(), d.target_space());
    for (deg, part) in d.homogeneous_parts() {
        let sign = Sign::from_parity(deg);
        let term1 = brace(q, &[&part], cap)?;
        let term2 = brace(&part, &[q], cap)?.scale(&(-sign).scalar());
        let term3 = hat_action(&ocha.l, &part, cap)?.scale(&sign.scalar());
        total = total.add(&term1)?.add(&term2)?.add(&term3)?;
    }
    Ok(total)
}

/// The same differential computed through the bracket,
/// `δ(D) = [q, D] + (−1)^{|D|} l̂(D)`; used as a cross-check.
pub fn hochschild_differential_via_bracket(
    ocha: &OchaStructure,
    d: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    let mut total = OCCochain::zero(d.closed_space(), d.open_space(), d.target_space());
    for (deg, part) in d.homogeneous_parts() {
        let sign = Sign::from_parity(deg);
        let term1 = gerstenhaber_bracket(&ocha.q, &part, cap)?;
        let term2 = hat_action(&ocha.l, &part, cap)?.scale(&sign.scalar());
        total = total.add(&term1)?.add(&term2)?;
    }
    Ok(total)
}

/// The A-infinity family induced on cochains: `M(D) = δ(D)` and
/// `M(D_1,…,D_k) = q{D_1,…,D_k}` for `k > 1`, exposed as an evaluator.
pub fn m_structure(
    ocha: &OchaStructure,
    ds: &[&OCCochain],
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    match ds.len() {
        0 => Err(CoreError::ForbiddenArity { l: 0, k: 0 }),
        1 => hochschild_differential(ocha, ds[0], cap),
        _ => brace(&ocha.q, ds, cap),
    }
}

/// The L-infinity family induced on closed-string cochains:
/// `L(k) = l⟨k⟩ − (−1)^{|k|} k⟨l⟩` and `L(k_1,…,k_n) = l⟨k_1,…,k_n⟩` for
/// `n > 1`.
pub fn l_structure(
    lc: &SymCochain,
    ks: &[&SymCochain],
    cap: Option<u32>,
) -> Result<SymCochain, CoreError> {
    match ks.len() {
        0 => Err(CoreError::ForbiddenArity { l: 0, k: 0 }),
        1 => {
            let k = ks[0];
            let mut total = SymCochain::zero(lc.source(), lc.target());
            for (deg, part) in k.homogeneous_parts() {
                let first = sym_brace(lc, &[&part], cap)?;
                let second =
                    sym_brace(&part, &[lc], cap)?.scale(&(-Sign::from_parity(deg)).scalar());
                total = total.add(&first)?.add(&second)?;
            }
            Ok(total)
        }
        _ => sym_brace(lc, ks, cap),
    }
}

/// The Gerstenhaber bracket
/// `[D_1, D_2] = D_1{D_2} − (−1)^{|D_1||D_2|} D_2{D_1}`, applied per
/// homogeneous parts.
pub fn gerstenhaber_bracket(
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    if !d1.same_spaces(d2) || !same_space(d1.open_space(), d1.target_space()) {
        return Err(CoreError::SpaceMismatch { context: "Gerstenhaber bracket" });
    }
    let mut total = OCCochain::zero(d1.closed_space(), d1.open_space(), d1.target_space());
    for (deg1, p1) in d1.homogeneous_parts() {
        for (deg2, p2) in d2.homogeneous_parts() {
            let first = brace(&p1, &[&p2], cap)?;
            let second =
                brace(&p2, &[&p1], cap)?.scale(&(-Sign::from_parity(deg1 * deg2)).scalar());
            total = total.add(&first)?.add(&second)?;
        }
    }
    Ok(total)
}

/// The Yoneda (cup) product `D_1 ⌣ D_2 = (−1)^{|D_1|+1} q{D_1, D_2}` of
/// shifted degree `|D_1| + |D_2| + 1`.
pub fn cup(
    ocha: &OchaStructure,
    d1: &OCCochain,
    d2: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    if !d1.same_spaces(d2) || !d1.same_spaces(&ocha.q) {
        return Err(CoreError::SpaceMismatch { context: "cup product" });
    }
    let mut total = OCCochain::zero(d1.closed_space(), d1.open_space(), d1.target_space());
    for (deg1, p1) in d1.homogeneous_parts() {
        let term = brace(&ocha.q, &[&p1, d2], cap)?.scale(&Sign::from_parity(deg1 + 1).scalar());
        total = total.add(&term)?;
    }
    Ok(total)
}

/// The arity-1 closed-to-open component `q_{1,0}` of an OCHA, together with
/// its chain-map verification `q_{0,1}∘q_{1,0} = q_{1,0}∘l_1` on every basis
/// element.
#[derive(Debug, Clone)]
pub struct IotaReport {
    /// Value on each closed basis element, in basis order.
    pub values: Vec<Vector>,
    pub chain_map: bool,
    pub failures: Vec<String>,
}

pub fn iota(ocha: &OchaStructure) -> Result<IotaReport, CoreError> {
    let b = ocha.q.closed_space();
    let q = &ocha.q;
    let mut values = Vec::with_capacity(b.dim() as usize);
    let mut failures = Vec::new();
    for idx in 0..b.dim() {
        let y = Vector::basis(b, idx)?;
        values.push(q.evaluate(&[y], &[])?);
    }
    for idx in 0..b.dim() {
        let y = Vector::basis(b, idx)?;
        let dy = ocha.l.evaluate(&[y.clone()])?;
        let lhs = q.evaluate(&[], &[values[idx as usize].clone()])?;
        let rhs = q.evaluate(&[dy], &[])?;
        let diff = lhs.add(&rhs.scale(&Scalar::from_int(-1)))?;
        if !diff.is_zero() {
            failures.push(format!("basis element {}: defect {diff}", b.label(idx)));
        }
    }
    failures.sort();
    Ok(IotaReport {
        values,
        chain_map: failures.is_empty(),
        failures,
    })
}

/// Builds the OCHA carried by an open-only A-infinity structure: the given
/// closed structure together with `q = ` the embedded open cochain.  The
/// axioms reduce to the A-infinity axiom, so this always validates.
pub fn embed_as_ocha(
    lc: &SymCochain,
    m: &OCCochain,
) -> Result<OchaCheck, CoreError> {
    let q = m.embed_into(lc.source())?;
    check_ocha(lc, &q)
}
