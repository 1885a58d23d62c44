//! Weight-truncated open-closed Hochschild complexes and their cohomology.
//!
//! The full cochain space is an infinite product, but the differential never
//! decreases the weight `2l + k` of a component: an insertion of a `(l',k')`
//! component changes the weight by `2l' + k' − 1 ≥ 0`, and the closed-string
//! action by `2l' − 2 ≥ 0`.  Quotienting by everything of weight above a cap
//! `W` therefore yields a genuine finite complex, and that is what this
//! module computes: cohomology of the weight-`≤ W` *quotient*, which is
//! reported as such and never conflated with the cohomology of the full
//! product.
//!
//! Class-level products are only computed inside windows where no discarded
//! weight can contribute; otherwise the operation refuses with a
//! [`CoreError::WeightOverflow`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::brace::ArityCap;
use crate::cochain::{open_tuples, wedge_basis, OCCochain, OCKey};
use crate::error::CoreError;
use crate::graded::Space;
use crate::linalg::{Matrix, TrackedSpan};
use crate::scalar::{Scalar, Sign};
use crate::structures::{
    cup, gerstenhaber_bracket, hochschild_differential, OchaStructure,
};

/// One basis cell of the truncated complex: a structure constant slot
/// `(l, k, closed word, open tuple, output element)` with `2l + k ≤ W`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub l: u32,
    pub k: u32,
    pub key: OCKey,
    pub out: u32,
}

impl Cell {
    pub fn weight(&self) -> i64 {
        2 * self.l as i64 + self.k as i64
    }
}

/// The weight-truncated complex of an OCHA, with the differential assembled
/// as an exact sparse matrix over the cell basis.
#[derive(Debug, Clone)]
pub struct TruncatedComplex {
    ocha: OchaStructure,
    weight_cap: i64,
    cells: Vec<Cell>,
    index: BTreeMap<Cell, usize>,
    degree_of_cell: Vec<i64>,
    cells_by_degree: BTreeMap<i64, Vec<usize>>,
    /// Column `j` holds the cell expansion of the differential of cell `j`,
    /// projected to weight `≤ W`.
    columns: Vec<Vec<(usize, Scalar)>>,
}

/// Default budget on the number of cells a truncation may allocate.
pub const DEFAULT_CELL_BUDGET: usize = 50_000;

impl TruncatedComplex {
    /// Enumerates the cell basis and assembles the differential matrix.
    /// Fails, rather than truncating further, when the cell count exceeds
    /// the budget.
    pub fn assemble(
        ocha: &OchaStructure,
        weight_cap: i64,
        cell_budget: usize,
    ) -> Result<Self, CoreError> {
        if weight_cap < 1 {
            return Err(CoreError::WeightOverflow { needed: 1, cap: weight_cap });
        }
        let b = ocha.q().closed_space().clone();
        let a = ocha.q().open_space().clone();
        let mut cells = Vec::new();
        let mut needed = 0usize;
        for l in 0..=(weight_cap / 2) as u32 {
            let words = wedge_basis(&b, l);
            let k_max = (weight_cap - 2 * l as i64) as u32;
            for k in 0..=k_max {
                if l == 0 && k == 0 {
                    continue;
                }
                let tuples = open_tuples(&a, k);
                needed += words.len() * tuples.len() * a.dim() as usize;
                if needed > cell_budget {
                    return Err(CoreError::CellBudgetExceeded {
                        needed,
                        budget: cell_budget,
                    });
                }
                for w in &words {
                    for t in &tuples {
                        for out in 0..a.dim() {
                            cells.push(Cell {
                                l,
                                k,
                                key: OCKey {
                                    closed: w.clone(),
                                    open: t.clone(),
                                },
                                out,
                            });
                        }
                    }
                }
            }
        }
        cells.sort();
        let index: BTreeMap<Cell, usize> =
            cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let degree_of_cell: Vec<i64> = cells
            .iter()
            .map(|c| cell_degree(&b, &a, c))
            .collect();
        let mut cells_by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &d) in degree_of_cell.iter().enumerate() {
            cells_by_degree.entry(d).or_default().push(i);
        }
        let cap = ArityCap::new((weight_cap / 2) as u32, weight_cap as u32);
        let mut columns = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut dual = OCCochain::zero(&b, &a, &a);
            dual.add_entry(
                cell.key.closed.factors(),
                &cell.key.open,
                cell.out,
                &Scalar::one(),
            )?;
            let image = hochschild_differential(ocha, &dual, Some(cap))?;
            let mut column = Vec::new();
            for (&(l, k), comp) in image.components() {
                if 2 * l as i64 + k as i64 > weight_cap {
                    continue;
                }
                for (key, target) in comp {
                    for (&out, coeff) in target {
                        let image_cell = Cell {
                            l,
                            k,
                            key: key.clone(),
                            out,
                        };
                        let idx = *index
                            .get(&image_cell)
                            .expect("differential image stays inside the enumerated cells");
                        column.push((idx, coeff.clone()));
                    }
                }
            }
            column.sort_by_key(|&(i, _)| i);
            columns.push(column);
        }
        Ok(TruncatedComplex {
            ocha: ocha.clone(),
            weight_cap,
            cells,
            index,
            degree_of_cell,
            cells_by_degree,
            columns,
        })
    }

    pub fn ocha(&self) -> &OchaStructure {
        &self.ocha
    }

    pub fn weight_cap(&self) -> i64 {
        self.weight_cap
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_degree(&self, idx: usize) -> i64 {
        self.degree_of_cell[idx]
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.cells_by_degree.keys().copied().collect()
    }

    pub fn cells_of_degree(&self, d: i64) -> &[usize] {
        self.cells_by_degree
            .get(&d)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// The boundary matrix squared, entrywise; zero for a genuine complex.
    pub fn boundary_squared_is_zero(&self) -> bool {
        for col in &self.columns {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (mid, c1) in col {
                for (end, c2) in &self.columns[*mid] {
                    let slot = acc.entry(*end).or_insert_with(Scalar::zero);
                    *slot += &(c1 * c2);
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Number of matrix entries that would lower the weight; zero because
    /// the differential is weight-non-decreasing.
    pub fn weight_violations(&self) -> usize {
        let mut violations = 0;
        for (j, col) in self.columns.iter().enumerate() {
            let wj = self.cells[j].weight();
            for (i, _) in col {
                if self.cells[*i].weight() < wj {
                    violations += 1;
                }
            }
        }
        violations
    }

    /// Number of matrix entries that do not raise the shifted degree by
    /// exactly one; zero because the differential is graded.
    pub fn grading_violations(&self) -> usize {
        let mut violations = 0;
        for (j, col) in self.columns.iter().enumerate() {
            for (i, _) in col {
                if self.degree_of_cell[*i] != self.degree_of_cell[j] + 1 {
                    violations += 1;
                }
            }
        }
        violations
    }

    /// The differential restricted to degree `d`, as a matrix from degree-`d`
    /// cells to degree-`d+1` cells.
    pub fn degree_matrix(&self, d: i64) -> Matrix {
        let domain = self.cells_of_degree(d);
        let codomain = self.cells_of_degree(d + 1);
        let row_of: BTreeMap<usize, usize> =
            codomain.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut m = Matrix::zero(codomain.len(), domain.len());
        for (col_pos, &cell_idx) in domain.iter().enumerate() {
            for (i, coeff) in &self.columns[cell_idx] {
                if let Some(&row) = row_of.get(i) {
                    m.set(row, col_pos, coeff.clone());
                }
            }
        }
        m
    }

    /// Drops every component of weight above the cap.
    pub fn project(&self, c: &OCCochain) -> OCCochain {
        let mut out = OCCochain::zero(c.closed_space(), c.open_space(), c.target_space());
        for (&(l, k), comp) in c.components() {
            if 2 * l as i64 + k as i64 <= self.weight_cap {
                out.insert_component_raw(l, k, comp.clone());
            }
        }
        out
    }

    /// Coordinates of a homogeneous cochain of degree `d` over the degree-`d`
    /// cells.  Errors when the cochain has entries outside the truncation or
    /// of the wrong degree.
    pub fn coordinates(&self, c: &OCCochain, d: i64) -> Result<Vec<Scalar>, CoreError> {
        let cells = self.cells_of_degree(d);
        let pos_of: BTreeMap<usize, usize> =
            cells.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut coords = vec![Scalar::zero(); cells.len()];
        for (&(l, k), comp) in c.components() {
            for (key, target) in comp {
                for (&out, coeff) in target {
                    let cell = Cell {
                        l,
                        k,
                        key: key.clone(),
                        out,
                    };
                    if cell.weight() > self.weight_cap {
                        return Err(CoreError::OutsideComplex { context: "coordinates" });
                    }
                    let idx = *self
                        .index
                        .get(&cell)
                        .ok_or(CoreError::OutsideComplex { context: "coordinates" })?;
                    if self.degree_of_cell[idx] != d {
                        return Err(CoreError::Inhomogeneous { context: "coordinates" });
                    }
                    coords[pos_of[&idx]] = coeff.clone();
                }
            }
        }
        Ok(coords)
    }

    /// Rebuilds a cochain from degree-`d` coordinates.
    pub fn cochain_from_coordinates(
        &self,
        coords: &[Scalar],
        d: i64,
    ) -> Result<OCCochain, CoreError> {
        let b = self.ocha.q().closed_space();
        let a = self.ocha.q().open_space();
        let mut out = OCCochain::zero(b, a, a);
        for (pos, &cell_idx) in self.cells_of_degree(d).iter().enumerate() {
            let coeff = &coords[pos];
            if coeff.is_zero() {
                continue;
            }
            let cell = &self.cells[cell_idx];
            out.add_entry(cell.key.closed.factors(), &cell.key.open, cell.out, coeff)?;
        }
        Ok(out)
    }

    /// Is the projection of `δ(c)` to the truncation zero?
    pub fn is_cocycle(&self, c: &OCCochain) -> Result<bool, CoreError> {
        let cap = ArityCap::new((self.weight_cap / 2) as u32, self.weight_cap as u32);
        let image = hochschild_differential(&self.ocha, c, Some(cap))?;
        Ok(self.project(&image).is_zero())
    }
}

fn cell_degree(b: &Space, a: &Space, cell: &Cell) -> i64 {
    let closed: i64 = cell
        .key
        .closed
        .factors()
        .iter()
        .map(|&i| b.shifted_degree(i))
        .sum();
    let open: i64 = cell.key.open.iter().map(|&i| a.shifted_degree(i)).sum();
    a.shifted_degree(cell.out) - closed - open
}

/// A cohomology class of the truncated complex.
#[derive(Debug, Clone)]
pub struct CohomologyClass {
    pub degree: i64,
    pub id: usize,
    pub representative: OCCochain,
}

/// A vector in the cohomology of one degree, expressed over the chosen
/// class basis of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    pub degree: i64,
    pub coords: Vec<Scalar>,
}

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn sub(&self, rhs: &ClassVector) -> Option<ClassVector> {
        if self.degree != rhs.degree || self.coords.len() != rhs.coords.len() {
            return None;
        }
        Some(ClassVector {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> ClassVector {
        ClassVector {
            degree: self.degree,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }
}

struct DegreeBlock {
    /// Image generators first, then class representatives.
    span: TrackedSpan,
    image_generators: usize,
    kernel_dim: usize,
    image_rank: usize,
    class_count: usize,
}

/// Kernel-modulo-image bases of every degree of a truncated complex.
pub struct CohomologyBasis {
    blocks: BTreeMap<i64, DegreeBlock>,
    classes: BTreeMap<i64, Vec<CohomologyClass>>,
}

/// Computes exact cohomology of the truncated complex per shifted degree.
pub fn cohomology_basis(complex: &TruncatedComplex) -> Result<CohomologyBasis, CoreError> {
    let mut blocks = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for d in complex.degrees() {
        let domain_dim = complex.cells_of_degree(d).len();
        let out_matrix = complex.degree_matrix(d);
        let in_matrix = complex.degree_matrix(d - 1);
        let kernel = out_matrix.kernel_basis();
        let mut span = TrackedSpan::new(domain_dim);
        let mut image_rank = 0;
        for j in 0..in_matrix.cols() {
            if span.insert(&in_matrix.column(j))? {
                image_rank += 1;
            }
        }
        let image_generators = in_matrix.cols();
        let mut degree_classes = Vec::new();
        for k in &kernel {
            let residue = span.reduce(k);
            if residue.iter().all(Scalar::is_zero) {
                continue;
            }
            let inserted = span.insert(&residue)?;
            debug_assert!(inserted);
            let representative = complex.cochain_from_coordinates(&residue, d)?;
            degree_classes.push(CohomologyClass {
                degree: d,
                id: degree_classes.len(),
                representative,
            });
        }
        let kernel_dim = kernel.len();
        debug_assert_eq!(kernel_dim, image_rank + degree_classes.len());
        blocks.insert(
            d,
            DegreeBlock {
                span,
                image_generators,
                kernel_dim,
                image_rank,
                class_count: degree_classes.len(),
            },
        );
        classes.insert(d, degree_classes);
    }
    Ok(CohomologyBasis { blocks, classes })
}

impl CohomologyBasis {
    /// Cohomology dimension per shifted degree.
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        self.blocks
            .iter()
            .map(|(&d, b)| (d, b.class_count))
            .collect()
    }

    pub fn kernel_dimension(&self, d: i64) -> usize {
        self.blocks.get(&d).map(|b| b.kernel_dim).unwrap_or(0)
    }

    pub fn image_rank(&self, d: i64) -> usize {
        self.blocks.get(&d).map(|b| b.image_rank).unwrap_or(0)
    }

    pub fn classes(&self, d: i64) -> &[CohomologyClass] {
        self.classes.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn all_classes(&self) -> impl Iterator<Item = &CohomologyClass> {
        self.classes.values().flatten()
    }

    /// Reduces a cocycle of degree `d` to class coordinates.  Errors when
    /// the cochain is not a cocycle of the truncated complex.
    pub fn class_of(
        &self,
        complex: &TruncatedComplex,
        c: &OCCochain,
        d: i64,
    ) -> Result<ClassVector, CoreError> {
        let coords = complex.coordinates(c, d)?;
        let block = match self.blocks.get(&d) {
            Some(b) => b,
            None => {
                if coords.iter().all(Scalar::is_zero) {
                    return Ok(ClassVector { degree: d, coords: Vec::new() });
                }
                return Err(CoreError::NotACocycle { context: "class reduction" });
            }
        };
        let combo = block
            .span
            .solve(&coords)
            .ok_or(CoreError::NotACocycle { context: "class reduction" })?;
        Ok(ClassVector {
            degree: d,
            coords: combo[block.image_generators..].to_vec(),
        })
    }
}

fn weight_of(c: &OCCochain) -> i64 {
    c.max_weight().unwrap_or(0)
}

/// Induced Gerstenhaber bracket on classes.  Refuses when the bracket of the
/// representatives could leave the weight window.
pub fn induced_bracket(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
) -> Result<ClassVector, CoreError> {
    let needed = weight_of(&c1.representative) + weight_of(&c2.representative) - 1;
    if needed > complex.weight_cap() {
        return Err(CoreError::WeightOverflow { needed, cap: complex.weight_cap() });
    }
    let result = gerstenhaber_bracket(&c1.representative, &c2.representative, None)?;
    basis.class_of(complex, &result, c1.degree + c2.degree)
}

/// Induced cup product on classes, with the cup weight rule
/// `w_1 + w_2 + max weight of q − 2 ≤ W`.
pub fn induced_cup(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
) -> Result<ClassVector, CoreError> {
    let wq = weight_of(complex.ocha().q());
    let needed = weight_of(&c1.representative) + weight_of(&c2.representative) + wq - 2;
    if needed > complex.weight_cap() {
        return Err(CoreError::WeightOverflow { needed, cap: complex.weight_cap() });
    }
    let result = cup(
        complex.ocha(),
        &c1.representative,
        &c2.representative,
        None,
    )?;
    basis.class_of(complex, &result, c1.degree + c2.degree + 1)
}

/// Per-axiom outcome of the Gerstenhaber verification.
#[derive(Debug, Clone, Default)]
pub struct AxiomOutcome {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Report of [`verify_gerstenhaber`]: one outcome per axiom family.
#[derive(Debug, Clone, Default)]
pub struct GerstenhaberReport {
    pub complex_is_complex: AxiomOutcome,
    pub representatives_closed: AxiomOutcome,
    pub bracket_antisymmetry: AxiomOutcome,
    pub bracket_jacobi: AxiomOutcome,
    pub cup_commutativity: AxiomOutcome,
    pub cup_associativity: AxiomOutcome,
    pub leibniz: AxiomOutcome,
}

impl GerstenhaberReport {
    pub fn passed(&self) -> bool {
        self.complex_is_complex.passed()
            && self.representatives_closed.passed()
            && self.bracket_antisymmetry.passed()
            && self.bracket_jacobi.passed()
            && self.cup_commutativity.passed()
            && self.cup_associativity.passed()
            && self.leibniz.passed()
    }

    pub fn outcomes(&self) -> Vec<(&'static str, &AxiomOutcome)> {
        vec![
            ("complex", &self.complex_is_complex),
            ("representatives-closed", &self.representatives_closed),
            ("bracket-antisymmetry", &self.bracket_antisymmetry),
            ("bracket-jacobi", &self.bracket_jacobi),
            ("cup-commutativity", &self.cup_commutativity),
            ("cup-associativity", &self.cup_associativity),
            ("leibniz", &self.leibniz),
        ]
    }
}

/// Bracket of two classes followed by reduction, `None` when the window
/// refuses.
fn class_bracket(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
) -> Result<Option<ClassVector>, CoreError> {
    match induced_bracket(complex, basis, c1, c2) {
        Ok(v) => Ok(Some(v)),
        Err(CoreError::WeightOverflow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn class_cup(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
) -> Result<Option<ClassVector>, CoreError> {
    match induced_cup(complex, basis, c1, c2) {
        Ok(v) => Ok(Some(v)),
        Err(CoreError::WeightOverflow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Finds the basis class equal to a class vector scaled representative, for
/// chaining products: rebuilds a representative for the vector.
fn vector_representative(
    basis: &CohomologyBasis,
    v: &ClassVector,
) -> Option<CohomologyClass> {
    let classes = basis.classes(v.degree);
    if classes.len() != v.coords.len() {
        return None;
    }
    let mut rep: Option<OCCochain> = None;
    for (c, class) in v.coords.iter().zip(classes) {
        if c.is_zero() {
            continue;
        }
        let term = class.representative.scale(c);
        rep = Some(match rep {
            None => term,
            Some(r) => r.add(&term).ok()?,
        });
    }
    let representative = match rep {
        None => return None,
        Some(r) => r,
    };
    Some(CohomologyClass {
        degree: v.degree,
        id: usize::MAX,
        representative,
    })
}

/// Checks the Gerstenhaber axioms on all pairs and triples from the sample
/// whose products fit the weight window: bracket antisymmetry and Jacobi,
/// cup graded commutativity and associativity, and the Leibniz rule with
/// sign `(−1)^{|D_1|(|D_2|+1)}`.  Window refusals are counted as skipped.
pub fn verify_gerstenhaber(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    sample: &[&CohomologyClass],
) -> Result<GerstenhaberReport, CoreError> {
    let mut report = GerstenhaberReport::default();

    report.complex_is_complex.checked = 3;
    if !complex.boundary_squared_is_zero() {
        report
            .complex_is_complex
            .failures
            .push("boundary matrix squared is nonzero".into());
    }
    if complex.weight_violations() != 0 {
        report
            .complex_is_complex
            .failures
            .push(format!("{} weight-lowering entries", complex.weight_violations()));
    }
    if complex.grading_violations() != 0 {
        report
            .complex_is_complex
            .failures
            .push(format!("{} non-grading entries", complex.grading_violations()));
    }

    for class in sample {
        report.representatives_closed.checked += 1;
        if !complex.is_cocycle(&class.representative)? {
            report
                .representatives_closed
                .failures
                .push(format!("representative ({}, {})", class.degree, class.id));
        }
    }

    for c1 in sample {
        for c2 in sample {
            // Antisymmetry: [c1,c2] + (−1)^{d1 d2}[c2,c1] = 0.
            let lhs = class_bracket(complex, basis, c1, c2)?;
            let rhs = class_bracket(complex, basis, c2, c1)?;
            match (lhs, rhs) {
                (Some(l), Some(r)) => {
                    report.bracket_antisymmetry.checked += 1;
                    let signed =
                        r.scale(&Sign::from_parity(c1.degree * c2.degree).scalar());
                    let sum = ClassVector {
                        degree: l.degree,
                        coords: l
                            .coords
                            .iter()
                            .zip(&signed.coords)
                            .map(|(a, b)| a.clone() + b.clone())
                            .collect(),
                    };
                    if !sum.is_zero() {
                        report.bracket_antisymmetry.failures.push(format!(
                            "classes ({},{}) and ({},{})",
                            c1.degree, c1.id, c2.degree, c2.id
                        ));
                    }
                }
                _ => report.bracket_antisymmetry.skipped += 1,
            }

            // Cup commutativity: c1⌣c2 = (−1)^{(d1+1)(d2+1)} c2⌣c1.
            let lhs = class_cup(complex, basis, c1, c2)?;
            let rhs = class_cup(complex, basis, c2, c1)?;
            match (lhs, rhs) {
                (Some(l), Some(r)) => {
                    report.cup_commutativity.checked += 1;
                    let signed = r.scale(
                        &Sign::from_parity((c1.degree + 1) * (c2.degree + 1)).scalar(),
                    );
                    match l.sub(&signed) {
                        Some(diff) if diff.is_zero() => {}
                        _ => report.cup_commutativity.failures.push(format!(
                            "classes ({},{}) and ({},{})",
                            c1.degree, c1.id, c2.degree, c2.id
                        )),
                    }
                }
                _ => report.cup_commutativity.skipped += 1,
            }
        }
    }

    for c0 in sample {
        for c1 in sample {
            for c2 in sample {
                check_jacobi_triple(complex, basis, c0, c1, c2, &mut report)?;
                check_associativity_triple(complex, basis, c0, c1, c2, &mut report)?;
                check_leibniz_triple(complex, basis, c0, c1, c2, &mut report)?;
            }
        }
    }
    Ok(report)
}

fn chain(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    first: Option<ClassVector>,
    other: &CohomologyClass,
    op: fn(
        &TruncatedComplex,
        &CohomologyBasis,
        &CohomologyClass,
        &CohomologyClass,
    ) -> Result<Option<ClassVector>, CoreError>,
    left: bool,
) -> Result<Option<ClassVector>, CoreError> {
    let Some(v) = first else { return Ok(None) };
    let Some(rep) = vector_representative(basis, &v) else {
        // Zero class: the product is the zero class; its degree depends on
        // the operation, so report it lazily as an empty marker.
        return Ok(Some(ClassVector { degree: i64::MIN, coords: Vec::new() }));
    };
    if left {
        op(complex, basis, &rep, other)
    } else {
        op(complex, basis, other, &rep)
    }
}

fn is_zero_marker(v: &ClassVector) -> bool {
    v.degree == i64::MIN || v.is_zero()
}

fn vectors_equal(a: &ClassVector, b: &ClassVector) -> bool {
    if is_zero_marker(a) && is_zero_marker(b) {
        return true;
    }
    if a.degree != b.degree {
        return false;
    }
    match a.sub(b) {
        Some(d) => d.is_zero(),
        None => false,
    }
}

fn check_jacobi_triple(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c0: &CohomologyClass,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
    report: &mut GerstenhaberReport,
) -> Result<(), CoreError> {
    let inner12 = class_bracket(complex, basis, c1, c2)?;
    let lhs = chain(complex, basis, inner12, c0, class_bracket, false)?;
    let inner01 = class_bracket(complex, basis, c0, c1)?;
    let first = chain(complex, basis, inner01, c2, class_bracket, true)?;
    let inner02 = class_bracket(complex, basis, c0, c2)?;
    let second = chain(complex, basis, inner02, c1, class_bracket, false)?;
    let (Some(lhs), Some(first), Some(second)) = (lhs, first, second) else {
        report.bracket_jacobi.skipped += 1;
        return Ok(());
    };
    report.bracket_jacobi.checked += 1;
    let sign = Sign::from_parity(c0.degree * c1.degree);
    let ok = combine_and_compare(&lhs, &first, &second.scale(&sign.scalar()));
    if !ok {
        report.bracket_jacobi.failures.push(format!(
            "classes ({},{}), ({},{}), ({},{})",
            c0.degree, c0.id, c1.degree, c1.id, c2.degree, c2.id
        ));
    }
    Ok(())
}

fn check_associativity_triple(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c0: &CohomologyClass,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
    report: &mut GerstenhaberReport,
) -> Result<(), CoreError> {
    let left_inner = class_cup(complex, basis, c0, c1)?;
    let lhs = chain(complex, basis, left_inner, c2, class_cup, true)?;
    let right_inner = class_cup(complex, basis, c1, c2)?;
    let rhs = chain(complex, basis, right_inner, c0, class_cup, false)?;
    let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
        report.cup_associativity.skipped += 1;
        return Ok(());
    };
    report.cup_associativity.checked += 1;
    if !vectors_equal(&lhs, &rhs) {
        report.cup_associativity.failures.push(format!(
            "classes ({},{}), ({},{}), ({},{})",
            c0.degree, c0.id, c1.degree, c1.id, c2.degree, c2.id
        ));
    }
    Ok(())
}

fn check_leibniz_triple(
    complex: &TruncatedComplex,
    basis: &CohomologyBasis,
    c0: &CohomologyClass,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
    report: &mut GerstenhaberReport,
) -> Result<(), CoreError> {
    // [c0, c1⌣c2] = [c0,c1]⌣c2 + (−1)^{d0(d1+1)} c1⌣[c0,c2].
    let cup12 = class_cup(complex, basis, c1, c2)?;
    let lhs = chain(complex, basis, cup12, c0, class_bracket, false)?;
    let br01 = class_bracket(complex, basis, c0, c1)?;
    let first = chain(complex, basis, br01, c2, class_cup, true)?;
    let br02 = class_bracket(complex, basis, c0, c2)?;
    let second = chain(complex, basis, br02, c1, class_cup, false)?;
    let (Some(lhs), Some(first), Some(second)) = (lhs, first, second) else {
        report.leibniz.skipped += 1;
        return Ok(());
    };
    report.leibniz.checked += 1;
    let sign = Sign::from_parity(c0.degree * (c1.degree + 1));
    let ok = combine_and_compare(&lhs, &first, &second.scale(&sign.scalar()));
    if !ok {
        report.leibniz.failures.push(format!(
            "classes ({},{}), ({},{}), ({},{})",
            c0.degree, c0.id, c1.degree, c1.id, c2.degree, c2.id
        ));
    }
    Ok(())
}

/// `lhs == first + second`, treating zero markers as zero vectors.
fn combine_and_compare(lhs: &ClassVector, first: &ClassVector, second: &ClassVector) -> bool {
    let pick_degree = [lhs, first, second]
        .iter()
        .find(|v| v.degree != i64::MIN)
        .map(|v| (v.degree, v.coords.len()));
    let Some((degree, len)) = pick_degree else {
        return true;
    };
    let expand = |v: &ClassVector| -> Option<Vec<Scalar>> {
        if v.degree == i64::MIN {
            return Some(vec![Scalar::zero(); len]);
        }
        if v.degree != degree || v.coords.len() != len {
            return None;
        }
        Some(v.coords.clone())
    };
    let (Some(l), Some(f), Some(s)) = (expand(lhs), expand(first), expand(second)) else {
        return false;
    };
    l.iter()
        .zip(f.iter().zip(s.iter()))
        .all(|(a, (b, c))| (a.clone() - (b.clone() + c.clone())).is_zero())
}
