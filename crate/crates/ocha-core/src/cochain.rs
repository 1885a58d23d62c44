//! Open-closed and closed-string cochains with canonical graded-symmetric
//! keys.
//!
//! An open-closed cochain is a finitely supported family of components
//! `D_{l,k}: B^{∧l} ⊗ A^{⊗k} → A'` stored as exact structure constants.  The
//! graded symmetric factor `B^{∧l}` is handled by keeping every stored key in
//! *canonical* form: the wedge word sorted by basis index with the Koszul
//! sign of the sort folded into the coefficient.  A word repeating a basis
//! element of odd shifted degree is the zero vector and is never stored.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::graded::{same_space, GradedSpace, Space, Vector};
use crate::scalar::{Scalar, Sign};

/// A canonical basis word of a graded symmetric power: basis indices sorted
/// ascending, with no repeated index of odd shifted degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeWord(pub(crate) Vec<u32>);

impl WedgeWord {
    pub fn empty() -> Self {
        WedgeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[u32] {
        &self.0
    }

    /// Sum of shifted degrees of the factors.
    pub fn shifted_degree_sum(&self, space: &Space) -> i64 {
        self.0.iter().map(|&i| space.shifted_degree(i)).sum()
    }

    /// Subword at the given (ascending) positions.
    pub fn subword(&self, positions: &[usize]) -> WedgeWord {
        WedgeWord(positions.iter().map(|&p| self.0[p]).collect())
    }
}

/// Result of normalizing a sequence of basis factors into a canonical wedge
/// word: either the zero vector, or a word together with the Koszul sign
/// accumulated while sorting (`sequence = sign · word` in the symmetric
/// power).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    Word { word: WedgeWord, sign: Sign },
}

/// Sorts a factor sequence into canonical order, accumulating the Koszul
/// sign; detects words that vanish because an odd-degree factor repeats.
pub fn normalize_wedge(space: &Space, factors: &[u32]) -> Result<Normalized, CoreError> {
    for &idx in factors {
        space.check_index(idx)?;
    }
    let mut word: Vec<u32> = factors.to_vec();
    let mut parity = 0i64;
    // Insertion sort; each adjacent swap of factors u, v contributes
    // |u|·|v| to the sign exponent.
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            parity += (space.shifted_degree(word[j - 1]) & 1)
                * (space.shifted_degree(word[j]) & 1);
            word.swap(j - 1, j);
            j -= 1;
        }
    }
    for pair in word.windows(2) {
        if pair[0] == pair[1] && space.shifted_degree(pair[0]) & 1 == 1 {
            return Ok(Normalized::Zero);
        }
    }
    Ok(Normalized::Word {
        word: WedgeWord(word),
        sign: Sign::from_parity(parity),
    })
}

/// All canonical wedge words of the given length over a space.
pub fn wedge_basis(space: &Space, len: u32) -> Vec<WedgeWord> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(len as usize);
    fn rec(space: &Space, len: u32, from: u32, current: &mut Vec<u32>, out: &mut Vec<WedgeWord>) {
        if current.len() == len as usize {
            out.push(WedgeWord(current.clone()));
            return;
        }
        for idx in from..space.dim() {
            let repeated_odd = current.last() == Some(&idx)
                && space.shifted_degree(idx) & 1 == 1;
            if repeated_odd {
                continue;
            }
            current.push(idx);
            rec(space, len, idx, current, out);
            current.pop();
        }
    }
    rec(space, len, 0, &mut current, &mut out);
    out
}

/// All `k`-tuples of basis indices of a space, in lexicographic order.
pub fn open_tuples(space: &Space, len: u32) -> Vec<Vec<u32>> {
    let dim = space.dim();
    if len == 0 {
        return alloc::vec![Vec::new()];
    }
    if dim == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut tuple = alloc::vec![0u32; len as usize];
    loop {
        out.push(tuple.clone());
        let mut i = len as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < dim {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Key of one stored structure constant of an open-closed component: the
/// canonical closed word and the ordered open input tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OCKey {
    pub closed: WedgeWord,
    pub open: Vec<u32>,
}

/// Output of one key: a sparse vector in the target space, stored as
/// coefficient per basis index.  Never contains zeros.
pub type Target = BTreeMap<u32, Scalar>;

pub(crate) fn add_into_target(target: &mut Target, out: u32, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match target.entry(out) {
        Entry::Vacant(v) => {
            v.insert(coeff.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Degree classification of a cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    /// The zero cochain, homogeneous of every degree.
    Zero,
    /// Every stored entry has the same implied shifted degree.
    Homogeneous(i64),
    /// Entries of several degrees are present.
    Mixed,
}

impl DegreeKind {
    pub fn homogeneous(self) -> Option<i64> {
        match self {
            DegreeKind::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// An open-closed cochain: finitely supported components
/// `D_{l,k}: B^{∧l} ⊗ A^{⊗k} → A'` with `(l,k) ≠ (0,0)`.
///
/// Only nonzero structure constants are stored, always under canonical keys.
/// A cochain may be inhomogeneous; sign-sensitive operations split it into
/// homogeneous parts internally (equivalently, they use the implied degree of
/// each stored entry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OCCochain {
    closed_space: Space,
    open_space: Space,
    target_space: Space,
    comps: BTreeMap<(u32, u32), BTreeMap<OCKey, Target>>,
}

impl OCCochain {
    pub fn zero(closed: &Space, open: &Space, target: &Space) -> Self {
        OCCochain {
            closed_space: closed.clone(),
            open_space: open.clone(),
            target_space: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn closed_space(&self) -> &Space {
        &self.closed_space
    }

    pub fn open_space(&self) -> &Space {
        &self.open_space
    }

    pub fn target_space(&self) -> &Space {
        &self.target_space
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Adds `coeff ·` (structure constant at the given closed factors, open
    /// tuple and output element).  The closed factors need not be sorted; the
    /// normalization sign is folded in.  Rejects `(l,k) = (0,0)`.
    pub fn add_entry(
        &mut self,
        closed_factors: &[u32],
        open: &[u32],
        out: u32,
        coeff: &Scalar,
    ) -> Result<(), CoreError> {
        if closed_factors.is_empty() && open.is_empty() {
            return Err(CoreError::ForbiddenArity { l: 0, k: 0 });
        }
        for &x in open {
            self.open_space.check_index(x)?;
        }
        self.target_space.check_index(out)?;
        let (word, sign) = match normalize_wedge(&self.closed_space, closed_factors)? {
            Normalized::Zero => return Ok(()),
            Normalized::Word { word, sign } => (word, sign),
        };
        if coeff.is_zero() {
            return Ok(());
        }
        let l = word.len() as u32;
        let k = open.len() as u32;
        let comp = self.comps.entry((l, k)).or_default();
        let key = OCKey {
            closed: word,
            open: open.to_vec(),
        };
        let target = comp.entry(key.clone()).or_default();
        add_into_target(target, out, &sign.apply(coeff));
        if target.is_empty() {
            comp.remove(&key);
        }
        if comp.is_empty() {
            self.comps.remove(&(l, k));
        }
        Ok(())
    }

    pub(crate) fn insert_component_raw(
        &mut self,
        l: u32,
        k: u32,
        comp: BTreeMap<OCKey, Target>,
    ) {
        if !comp.is_empty() {
            self.comps.insert((l, k), comp);
        }
    }

    pub fn component(&self, l: u32, k: u32) -> Option<&BTreeMap<OCKey, Target>> {
        self.comps.get(&(l, k))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(u32, u32), &BTreeMap<OCKey, Target>)> {
        self.comps.iter()
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.comps.keys().copied().collect()
    }

    pub fn max_closed_arity(&self) -> Option<u32> {
        self.comps.keys().map(|&(l, _)| l).max()
    }

    pub fn max_open_arity(&self) -> Option<u32> {
        self.comps.keys().map(|&(_, k)| k).max()
    }

    /// Largest weight `2l + k` over the support; `None` for zero.
    pub fn max_weight(&self) -> Option<i64> {
        self.comps
            .keys()
            .map(|&(l, k)| 2 * l as i64 + k as i64)
            .max()
    }

    /// Implied shifted degree of one stored entry:
    /// `|out| − Σ|closed| − Σ|open|`.
    pub fn entry_degree(&self, key: &OCKey, out: u32) -> i64 {
        let closed_sum = key.closed.shifted_degree_sum(&self.closed_space);
        let open_sum: i64 = key
            .open
            .iter()
            .map(|&i| self.open_space.shifted_degree(i))
            .sum();
        self.target_space.shifted_degree(out) - closed_sum - open_sum
    }

    pub fn degree(&self) -> DegreeKind {
        let mut found: Option<i64> = None;
        for (_, comp) in &self.comps {
            for (key, target) in comp {
                for (&out, _) in target {
                    let d = self.entry_degree(key, out);
                    match found {
                        None => found = Some(d),
                        Some(existing) if existing == d => {}
                        Some(_) => return DegreeKind::Mixed,
                    }
                }
            }
        }
        match found {
            None => DegreeKind::Zero,
            Some(d) => DegreeKind::Homogeneous(d),
        }
    }

    /// Splits into homogeneous parts, keyed by shifted degree.  The zero
    /// cochain yields no parts.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, OCCochain> {
        let mut parts: BTreeMap<i64, OCCochain> = BTreeMap::new();
        for (&(l, k), comp) in &self.comps {
            for (key, target) in comp {
                for (&out, coeff) in target {
                    let d = self.entry_degree(key, out);
                    let part = parts.entry(d).or_insert_with(|| {
                        OCCochain::zero(&self.closed_space, &self.open_space, &self.target_space)
                    });
                    let pcomp = part.comps.entry((l, k)).or_default();
                    let ptarget = pcomp.entry(key.clone()).or_default();
                    ptarget.insert(out, coeff.clone());
                }
            }
        }
        parts
    }

    pub fn same_spaces(&self, other: &OCCochain) -> bool {
        same_space(&self.closed_space, &other.closed_space)
            && same_space(&self.open_space, &other.open_space)
            && same_space(&self.target_space, &other.target_space)
    }

    pub fn add(&self, rhs: &OCCochain) -> Result<OCCochain, CoreError> {
        if !self.same_spaces(rhs) {
            return Err(CoreError::SpaceMismatch { context: "cochain addition" });
        }
        let mut out = self.clone();
        for (&(l, k), comp) in &rhs.comps {
            let ocomp = out.comps.entry((l, k)).or_default();
            for (key, target) in comp {
                let otarget = ocomp.entry(key.clone()).or_default();
                for (&idx, coeff) in target {
                    add_into_target(otarget, idx, coeff);
                }
                if otarget.is_empty() {
                    ocomp.remove(key);
                }
            }
            if ocomp.is_empty() {
                out.comps.remove(&(l, k));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> OCCochain {
        if c.is_zero() {
            return OCCochain::zero(&self.closed_space, &self.open_space, &self.target_space);
        }
        let mut out = self.clone();
        for comp in out.comps.values_mut() {
            for target in comp.values_mut() {
                for coeff in target.values_mut() {
                    *coeff *= c;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &OCCochain) -> Result<OCCochain, CoreError> {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    /// Looks up the structure constants at a canonical key.
    pub fn constants(&self, l: u32, k: u32, key: &OCKey) -> Option<&Target> {
        self.comps.get(&(l, k)).and_then(|c| c.get(key))
    }

    /// Multilinear, graded symmetric evaluation on vectors.  The closed
    /// inputs are symmetrized with Koszul signs: swapping two adjacent closed
    /// arguments multiplies the value by `(−1)^{|y_i||y_{i+1}|}`.
    pub fn evaluate(&self, closed: &[Vector], open: &[Vector]) -> Result<Vector, CoreError> {
        for y in closed {
            if !same_space(y.space(), &self.closed_space) {
                return Err(CoreError::SpaceMismatch { context: "closed input" });
            }
        }
        for x in open {
            if !same_space(x.space(), &self.open_space) {
                return Err(CoreError::SpaceMismatch { context: "open input" });
            }
        }
        let mut result = Vector::zero(&self.target_space);
        let l = closed.len() as u32;
        let k = open.len() as u32;
        let comp = match self.comps.get(&(l, k)) {
            Some(c) => c,
            None => return Ok(result),
        };
        // Expand multilinearly over basis terms of every slot.
        let mut closed_terms: Vec<Vec<(u32, &Scalar)>> = Vec::with_capacity(closed.len());
        for y in closed {
            closed_terms.push(y.entries().collect());
        }
        let mut open_terms: Vec<Vec<(u32, &Scalar)>> = Vec::with_capacity(open.len());
        for x in open {
            open_terms.push(x.entries().collect());
        }
        if closed_terms.iter().any(|t| t.is_empty()) || open_terms.iter().any(|t| t.is_empty()) {
            return Ok(result);
        }
        let mut closed_choice = alloc::vec![0usize; closed.len()];
        loop {
            let closed_factors: Vec<u32> = closed_choice
                .iter()
                .enumerate()
                .map(|(slot, &t)| closed_terms[slot][t].0)
                .collect();
            let mut closed_coeff = Scalar::one();
            for (slot, &t) in closed_choice.iter().enumerate() {
                closed_coeff *= closed_terms[slot][t].1;
            }
            if let Normalized::Word { word, sign } =
                normalize_wedge(&self.closed_space, &closed_factors)?
            {
                let closed_coeff = sign.apply(&closed_coeff);
                let mut open_choice = alloc::vec![0usize; open.len()];
                loop {
                    let open_tuple: Vec<u32> = open_choice
                        .iter()
                        .enumerate()
                        .map(|(slot, &t)| open_terms[slot][t].0)
                        .collect();
                    let mut coeff = closed_coeff.clone();
                    for (slot, &t) in open_choice.iter().enumerate() {
                        coeff *= open_terms[slot][t].1;
                    }
                    let key = OCKey {
                        closed: word.clone(),
                        open: open_tuple,
                    };
                    if let Some(target) = comp.get(&key) {
                        for (&out, c) in target {
                            result.add_term(out, &(&coeff * c))?;
                        }
                    }
                    if !advance_choice(&mut open_choice, &open_terms) {
                        break;
                    }
                }
            }
            if !advance_choice(&mut closed_choice, &closed_terms) {
                break;
            }
        }
        Ok(result)
    }

    /// Restriction to closed arity zero, re-based over the zero space.  The
    /// inverse of [`OCCochain::embed_into`] on open-only cochains.
    pub fn project_open(&self) -> OCCochain {
        let zero_b = zero_closed_space();
        let mut out = OCCochain::zero(&zero_b, &self.open_space, &self.target_space);
        for (&(l, k), comp) in &self.comps {
            if l == 0 {
                out.comps.insert((0, k), comp.clone());
            }
        }
        out
    }

    /// Embeds an open-only cochain (closed arity zero throughout) over a new
    /// closed-string space, placing component `k` at `(0, k)` verbatim.
    pub fn embed_into(&self, closed: &Space) -> Result<OCCochain, CoreError> {
        if self.comps.keys().any(|&(l, _)| l != 0) {
            return Err(CoreError::NotOpenOnly);
        }
        let mut out = OCCochain::zero(closed, &self.open_space, &self.target_space);
        out.comps = self.comps.clone();
        Ok(out)
    }

    /// Renders entries as deterministic display lines, smallest keys first.
    pub fn render_entries(&self) -> Vec<String> {
        use core::fmt::Write;
        let mut lines = Vec::new();
        for (&(l, k), comp) in &self.comps {
            for (key, target) in comp {
                for (&out, coeff) in target {
                    let mut line = String::new();
                    let _ = write!(line, "({l},{k}) [");
                    for (i, &b) in key.closed.factors().iter().enumerate() {
                        if i > 0 {
                            let _ = write!(line, " ");
                        }
                        let _ = write!(line, "{}", self.closed_space.label(b));
                    }
                    let _ = write!(line, "] [");
                    for (i, &a) in key.open.iter().enumerate() {
                        if i > 0 {
                            let _ = write!(line, " ");
                        }
                        let _ = write!(line, "{}", self.open_space.label(a));
                    }
                    let _ = write!(
                        line,
                        "] -> {} : {}",
                        self.target_space.label(out),
                        coeff.to_fraction_string()
                    );
                    lines.push(line);
                }
            }
        }
        lines
    }
}

/// The canonical zero-dimensional closed-string space used when an
/// open-only cochain is considered on its own.
pub fn zero_closed_space() -> Space {
    GradedSpace::zero("0", 2)
}

fn advance_choice(choice: &mut [usize], terms: &[Vec<(u32, &Scalar)>]) -> bool {
    if terms.iter().any(|t| t.is_empty()) {
        return false;
    }
    let mut i = choice.len();
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        choice[i] += 1;
        if choice[i] < terms[i].len() {
            return true;
        }
        choice[i] = 0;
    }
}

/// A closed-string cochain: finitely supported graded symmetric components
/// `k_l: B^{∧l} → B'` with `l ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymCochain {
    source: Space,
    target: Space,
    comps: BTreeMap<u32, BTreeMap<WedgeWord, Target>>,
}

impl SymCochain {
    pub fn zero(source: &Space, target: &Space) -> Self {
        SymCochain {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_endo(&self) -> bool {
        same_space(&self.source, &self.target)
    }

    pub fn add_entry(
        &mut self,
        factors: &[u32],
        out: u32,
        coeff: &Scalar,
    ) -> Result<(), CoreError> {
        if factors.is_empty() {
            return Err(CoreError::ForbiddenArity { l: 0, k: 0 });
        }
        self.target.check_index(out)?;
        let (word, sign) = match normalize_wedge(&self.source, factors)? {
            Normalized::Zero => return Ok(()),
            Normalized::Word { word, sign } => (word, sign),
        };
        if coeff.is_zero() {
            return Ok(());
        }
        let l = word.len() as u32;
        let comp = self.comps.entry(l).or_default();
        let target = comp.entry(word.clone()).or_default();
        add_into_target(target, out, &sign.apply(coeff));
        if target.is_empty() {
            comp.remove(&word);
        }
        if comp.is_empty() {
            self.comps.remove(&l);
        }
        Ok(())
    }

    pub fn component(&self, l: u32) -> Option<&BTreeMap<WedgeWord, Target>> {
        self.comps.get(&l)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &BTreeMap<WedgeWord, Target>)> {
        self.comps.iter().map(|(&l, c)| (l, c))
    }

    pub fn arities(&self) -> Vec<u32> {
        self.comps.keys().copied().collect()
    }

    pub fn max_arity(&self) -> Option<u32> {
        self.comps.keys().copied().max()
    }

    pub fn entry_degree(&self, word: &WedgeWord, out: u32) -> i64 {
        self.target.shifted_degree(out) - word.shifted_degree_sum(&self.source)
    }

    pub fn degree(&self) -> DegreeKind {
        let mut found: Option<i64> = None;
        for (_, comp) in &self.comps {
            for (word, target) in comp {
                for (&out, _) in target {
                    let d = self.entry_degree(word, out);
                    match found {
                        None => found = Some(d),
                        Some(existing) if existing == d => {}
                        Some(_) => return DegreeKind::Mixed,
                    }
                }
            }
        }
        match found {
            None => DegreeKind::Zero,
            Some(d) => DegreeKind::Homogeneous(d),
        }
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<i64, SymCochain> {
        let mut parts: BTreeMap<i64, SymCochain> = BTreeMap::new();
        for (&l, comp) in &self.comps {
            for (word, target) in comp {
                for (&out, coeff) in target {
                    let d = self.entry_degree(word, out);
                    let part = parts
                        .entry(d)
                        .or_insert_with(|| SymCochain::zero(&self.source, &self.target));
                    let pcomp = part.comps.entry(l).or_default();
                    let ptarget = pcomp.entry(word.clone()).or_default();
                    ptarget.insert(out, coeff.clone());
                }
            }
        }
        parts
    }

    pub fn add(&self, rhs: &SymCochain) -> Result<SymCochain, CoreError> {
        if !same_space(&self.source, &rhs.source) || !same_space(&self.target, &rhs.target) {
            return Err(CoreError::SpaceMismatch { context: "sym cochain addition" });
        }
        let mut out = self.clone();
        for (&l, comp) in &rhs.comps {
            let ocomp = out.comps.entry(l).or_default();
            for (word, target) in comp {
                let otarget = ocomp.entry(word.clone()).or_default();
                for (&idx, coeff) in target {
                    add_into_target(otarget, idx, coeff);
                }
                if otarget.is_empty() {
                    ocomp.remove(word);
                }
            }
            if ocomp.is_empty() {
                out.comps.remove(&l);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SymCochain {
        if c.is_zero() {
            return SymCochain::zero(&self.source, &self.target);
        }
        let mut out = self.clone();
        for comp in out.comps.values_mut() {
            for target in comp.values_mut() {
                for coeff in target.values_mut() {
                    *coeff *= c;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &SymCochain) -> Result<SymCochain, CoreError> {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    /// Graded symmetric multilinear evaluation on vectors.
    pub fn evaluate(&self, inputs: &[Vector]) -> Result<Vector, CoreError> {
        for y in inputs {
            if !same_space(y.space(), &self.source) {
                return Err(CoreError::SpaceMismatch { context: "closed input" });
            }
        }
        let mut result = Vector::zero(&self.target);
        let comp = match self.comps.get(&(inputs.len() as u32)) {
            Some(c) => c,
            None => return Ok(result),
        };
        let mut terms: Vec<Vec<(u32, &Scalar)>> = Vec::with_capacity(inputs.len());
        for y in inputs {
            terms.push(y.entries().collect());
        }
        let mut choice = alloc::vec![0usize; inputs.len()];
        if terms.iter().any(|t| t.is_empty()) {
            return Ok(result);
        }
        loop {
            let factors: Vec<u32> = choice
                .iter()
                .enumerate()
                .map(|(slot, &t)| terms[slot][t].0)
                .collect();
            let mut coeff = Scalar::one();
            for (slot, &t) in choice.iter().enumerate() {
                coeff *= terms[slot][t].1;
            }
            if let Normalized::Word { word, sign } = normalize_wedge(&self.source, &factors)? {
                if let Some(target) = comp.get(&word) {
                    let coeff = sign.apply(&coeff);
                    for (&out, c) in target {
                        result.add_term(out, &(&coeff * c))?;
                    }
                }
            }
            if !advance_choice(&mut choice, &terms) {
                break;
            }
        }
        Ok(result)
    }

    /// The arity-1 identity map of a space.
    pub fn identity(space: &Space) -> SymCochain {
        let mut out = SymCochain::zero(space, space);
        for idx in 0..space.dim() {
            out.add_entry(&[idx], idx, &Scalar::one())
                .expect("identity entries are valid");
        }
        out
    }

    pub fn render_entries(&self) -> Vec<String> {
        use core::fmt::Write;
        let mut lines = Vec::new();
        for (&l, comp) in &self.comps {
            for (word, target) in comp {
                for (&out, coeff) in target {
                    let mut line = String::new();
                    let _ = write!(line, "({l}) [");
                    for (i, &b) in word.factors().iter().enumerate() {
                        if i > 0 {
                            let _ = write!(line, " ");
                        }
                        let _ = write!(line, "{}", self.source.label(b));
                    }
                    let _ = write!(
                        line,
                        "] -> {} : {}",
                        self.target.label(out),
                        coeff.to_fraction_string()
                    );
                    lines.push(line);
                }
            }
        }
        lines
    }
}
