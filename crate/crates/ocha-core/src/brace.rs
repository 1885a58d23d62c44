//! Open-closed brace operations, the closed-string action, and the
//! symmetric braces.
//!
//! All operations assemble exact structure constants by summing over the
//! defining partition index sets: ordered partitions of the closed positions
//! (graded symmetric side) times dotted partitions of the open positions
//! (tensor side).  The enumeration is pruned to block sizes that the sparse
//! supports can absorb, which selects exactly the nonzero terms of the full
//! sum.  Every wedge-splitting sign is produced by [`normalize_wedge`] on the
//! concatenated word, so there is a single source of truth for Koszul signs.
//!
//! Each operation takes an optional output arity cap and skips components
//! beyond it.  Results below the cap are exact, because an output component
//! `(l, k)` only depends on input components with `l' ≤ l` and
//! `k' ≤ k + (number of inserted arguments)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cochain::{
    add_into_target, normalize_wedge, open_tuples, wedge_basis, Normalized, OCCochain, OCKey,
    SymCochain, Target, WedgeWord,
};
use crate::combinatorics::{
    dotted_partitions, koszul_sign, ordered_partitions, set_partitions_filtered,
    splits_with_sizes, CompositionIter,
};
use crate::error::CoreError;
use crate::graded::{same_space, Vector};
use crate::scalar::{Scalar, Sign};

/// Cap on assembled output arities: components with `l > closed` or
/// `k > open` are skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArityCap {
    pub closed: u32,
    pub open: u32,
}

impl ArityCap {
    pub fn new(closed: u32, open: u32) -> Self {
        ArityCap { closed, open }
    }

    /// Widens the open cap, for feeding a capped result into an operation
    /// that consumes open slots.
    pub fn widen_open(self, extra: u32) -> Self {
        ArityCap {
            closed: self.closed,
            open: self.open + extra,
        }
    }
}

fn cap_closed(cap: Option<ArityCap>, natural: u32) -> u32 {
    match cap {
        Some(c) => natural.min(c.closed),
        None => natural,
    }
}

fn cap_open(cap: Option<ArityCap>, natural: u32) -> u32 {
    match cap {
        Some(c) => natural.min(c.open),
        None => natural,
    }
}

fn parity(d: i64) -> i64 {
    d & 1
}

fn restrict_to_cap(d: &OCCochain, cap: Option<ArityCap>) -> OCCochain {
    let mut out = OCCochain::zero(d.closed_space(), d.open_space(), d.target_space());
    for (&(l, k), comp) in d.components() {
        let keep = match cap {
            Some(c) => l <= c.closed && k <= c.open,
            None => true,
        };
        if keep {
            out.insert_component_raw(l, k, comp.clone());
        }
    }
    out
}

/// The higher brace `D{E_1, …, E_m}`: the signed sum over all ways to insert
/// the values of the `E_j`, in order, into the open slots of `D`, while the
/// closed inputs are distributed over `D` and the `E_j` with Koszul signs.
///
/// `m = 0` returns `D` (restricted to the cap), and `m = 1` is the
/// Gerstenhaber product.  The shifted degree is additive:
/// `|D{E_1,…,E_m}| = |D| + Σ|E_j|`.
pub fn brace(
    d: &OCCochain,
    es: &[&OCCochain],
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    for e in es {
        let insertable = same_space(e.closed_space(), d.closed_space())
            && same_space(e.open_space(), d.open_space())
            && same_space(e.target_space(), d.open_space());
        if !insertable {
            return Err(CoreError::SpaceMismatch { context: "brace insertion" });
        }
    }
    let m = es.len();
    if m == 0 {
        return Ok(restrict_to_cap(d, cap));
    }
    let mut out = OCCochain::zero(d.closed_space(), d.open_space(), d.target_space());
    if d.is_zero() || es.iter().any(|e| e.is_zero()) {
        return Ok(out);
    }
    let b = d.closed_space().clone();
    let a = d.open_space().clone();

    let e_supports: Vec<Vec<(u32, u32)>> = es.iter().map(|e| e.support()).collect();
    let sum_e_l: u32 = es.iter().map(|e| e.max_closed_arity().unwrap_or(0)).sum();
    let sum_e_k: u32 = es.iter().map(|e| e.max_open_arity().unwrap_or(0)).sum();
    let l_hi = cap_closed(cap, d.max_closed_arity().unwrap_or(0) + sum_e_l);
    let k_natural = d.max_open_arity().unwrap_or(0) as i64 + sum_e_k as i64 - m as i64;
    if k_natural < 0 {
        return Ok(out);
    }
    let k_hi = cap_open(cap, k_natural as u32);

    for l_out in 0..=l_hi {
        for k_out in 0..=k_hi {
            if l_out == 0 && k_out == 0 {
                continue;
            }
            let combos = arity_combos(d, &e_supports, l_out, k_out);
            if combos.is_empty() {
                continue;
            }
            let mut comp_out: BTreeMap<OCKey, Target> = BTreeMap::new();
            let words = wedge_basis(&b, l_out);
            let tuples = open_tuples(&a, k_out);
            for combo in &combos {
                let e_sizes_closed: Vec<usize> =
                    combo.e_arities.iter().map(|&(l, _)| l as usize).collect();
                let mut sizes = Vec::with_capacity(m + 1);
                sizes.push(combo.d_arity.0 as usize);
                sizes.extend(&e_sizes_closed);
                let closed_splits = splits_with_sizes(l_out as usize, &sizes);
                let layouts = open_layouts(k_out, &combo.e_arities);
                if closed_splits.is_empty() || layouts.is_empty() {
                    continue;
                }
                for w in &words {
                    // Per-split data independent of the open tuple.
                    let mut split_data = Vec::with_capacity(closed_splits.len());
                    for split in &closed_splits {
                        let w_d = w.subword(&split[0]);
                        let wl: Vec<WedgeWord> =
                            (1..=m).map(|j| w.subword(&split[j])).collect();
                        let mut concat: Vec<u32> = w_d.factors().to_vec();
                        for wj in &wl {
                            concat.extend_from_slice(wj.factors());
                        }
                        let eps = match normalize_wedge(&b, &concat)? {
                            Normalized::Word { sign, .. } => sign,
                            Normalized::Zero => unreachable!("permutation of a valid word"),
                        };
                        let p_d = parity(w_d.shifted_degree_sum(&b));
                        let p_l: Vec<i64> = wl
                            .iter()
                            .map(|wj| parity(wj.shifted_degree_sum(&b)))
                            .collect();
                        split_data.push((w_d, wl, eps, p_d, p_l));
                    }
                    for t in &tuples {
                        // Prefix parities of the open tuple degrees.
                        let mut prefix = Vec::with_capacity(t.len() + 1);
                        prefix.push(0i64);
                        for &x in t {
                            let last = *prefix.last().unwrap();
                            prefix.push((last + parity(a.shifted_degree(x))) & 1);
                        }
                        for (w_d, wl, eps, p_d, p_l) in &split_data {
                            for layout in &layouts {
                                accumulate_brace_terms(
                                    d,
                                    es,
                                    combo,
                                    w,
                                    t,
                                    w_d,
                                    wl,
                                    *eps,
                                    *p_d,
                                    p_l,
                                    &prefix,
                                    layout,
                                    &mut comp_out,
                                )?;
                            }
                        }
                    }
                }
            }
            out.insert_component_raw(l_out, k_out, comp_out);
        }
    }
    Ok(out)
}

/// The Gerstenhaber product `D{E}`, the single-insertion brace.
pub fn gerstenhaber_product(
    d: &OCCochain,
    e: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    brace(d, &[e], cap)
}

struct ArityCombo {
    d_arity: (u32, u32),
    e_arities: Vec<(u32, u32)>,
}

fn arity_combos(
    d: &OCCochain,
    e_supports: &[Vec<(u32, u32)>],
    l_out: u32,
    k_out: u32,
) -> Vec<ArityCombo> {
    let m = e_supports.len();
    let mut out = Vec::new();
    let mut chosen: Vec<(u32, u32)> = Vec::with_capacity(m);
    fn rec(
        d: &OCCochain,
        e_supports: &[Vec<(u32, u32)>],
        l_out: u32,
        k_out: u32,
        j: usize,
        sum_l: u32,
        sum_k: u32,
        chosen: &mut Vec<(u32, u32)>,
        out: &mut Vec<ArityCombo>,
    ) {
        let m = e_supports.len();
        if j == m {
            let l_d = match l_out.checked_sub(sum_l) {
                Some(v) => v,
                None => return,
            };
            let k_d = k_out as i64 + m as i64 - sum_k as i64;
            if k_d < m as i64 {
                return;
            }
            let k_d = k_d as u32;
            if d.component(l_d, k_d).is_some() {
                out.push(ArityCombo {
                    d_arity: (l_d, k_d),
                    e_arities: chosen.clone(),
                });
            }
            return;
        }
        for &(le, ke) in &e_supports[j] {
            if sum_l + le > l_out || ke > k_out {
                continue;
            }
            chosen.push((le, ke));
            rec(d, e_supports, l_out, k_out, j + 1, sum_l + le, sum_k + ke, chosen, out);
            chosen.pop();
        }
    }
    rec(d, e_supports, l_out, k_out, 0, 0, 0, &mut chosen, &mut out);
    out
}

/// Positions of the inserted-argument blocks inside the output open tuple.
struct OpenLayout {
    /// Start offset of `K_j` in the output tuple, per insertion.
    starts: Vec<usize>,
    /// Template of the host cochain's open key: `FromT(i)` copies output
    /// slot `i`, `Insert(j)` receives the value of the `j`-th insertion.
    template: Vec<SlotTpl>,
}

#[derive(Clone, Copy)]
enum SlotTpl {
    FromT(usize),
    Insert(usize),
}

fn open_layouts(k_out: u32, e_arities: &[(u32, u32)]) -> Vec<OpenLayout> {
    let m = e_arities.len();
    let consumed: usize = e_arities.iter().map(|&(_, k)| k as usize).sum();
    let free = match (k_out as usize).checked_sub(consumed) {
        Some(v) => v,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    for gaps in CompositionIter::new(free, m + 1) {
        let mut starts = Vec::with_capacity(m);
        let mut template = Vec::with_capacity(free + m);
        let mut cursor = 0usize;
        for (j, &(_, ke)) in e_arities.iter().enumerate() {
            for _ in 0..gaps[j] {
                template.push(SlotTpl::FromT(cursor));
                cursor += 1;
            }
            starts.push(cursor);
            template.push(SlotTpl::Insert(j));
            cursor += ke as usize;
        }
        for _ in 0..gaps[m] {
            template.push(SlotTpl::FromT(cursor));
            cursor += 1;
        }
        debug_assert_eq!(cursor, k_out as usize);
        out.push(OpenLayout { starts, template });
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn accumulate_brace_terms(
    d: &OCCochain,
    es: &[&OCCochain],
    combo: &ArityCombo,
    w: &WedgeWord,
    t: &[u32],
    w_d: &WedgeWord,
    wl: &[WedgeWord],
    eps: Sign,
    p_d: i64,
    p_l: &[i64],
    prefix: &[i64],
    layout: &OpenLayout,
    comp_out: &mut BTreeMap<OCKey, Target>,
) -> Result<(), CoreError> {
    let m = es.len();
    // Entry lists of each inserted argument at its sub-key.
    let mut entry_lists: Vec<Vec<(u32, &Scalar, i64)>> = Vec::with_capacity(m);
    for j in 0..m {
        let (le, ke) = combo.e_arities[j];
        let start = layout.starts[j];
        let key = OCKey {
            closed: wl[j].clone(),
            open: t[start..start + ke as usize].to_vec(),
        };
        let target = match es[j].constants(le, ke, &key) {
            Some(tg) => tg,
            None => return Ok(()),
        };
        let list: Vec<(u32, &Scalar, i64)> = target
            .iter()
            .map(|(&o, c)| (o, c, parity(es[j].entry_degree(&key, o))))
            .collect();
        entry_lists.push(list);
    }
    // Parity of the open inputs standing before each insertion.
    let open_before: Vec<i64> = (0..m).map(|j| prefix[layout.starts[j]]).collect();
    // Odometer over the inserted entries.
    let mut choice = vec![0usize; m];
    let (l_d, k_d) = combo.d_arity;
    let mut d_open = vec![0u32; k_d as usize];
    loop {
        let mut inserted_coeff = Scalar::one();
        let mut entry_parity = 0i64;
        let mut closed_acc = p_d;
        for j in 0..m {
            let (o, c, pe) = entry_lists[j][choice[j]];
            inserted_coeff *= c;
            // (opens before E_j)·(|E_j| + |y_{L_j}|) + (closed before E_j)·|E_j|
            entry_parity += open_before[j] * (pe + p_l[j]) + closed_acc * pe;
            closed_acc = (closed_acc + p_l[j]) & 1;
            for (slot, tpl) in layout.template.iter().enumerate() {
                if let SlotTpl::Insert(jj) = tpl {
                    if *jj == j {
                        d_open[slot] = o;
                    }
                }
            }
        }
        for (slot, tpl) in layout.template.iter().enumerate() {
            if let SlotTpl::FromT(i) = tpl {
                d_open[slot] = t[*i];
            }
        }
        let d_key = OCKey {
            closed: w_d.clone(),
            open: d_open.clone(),
        };
        if let Some(target) = d.constants(l_d, k_d, &d_key) {
            let sign = eps * Sign::from_parity(entry_parity);
            let factor = sign.apply(&inserted_coeff);
            let out_key = OCKey {
                closed: w.clone(),
                open: t.to_vec(),
            };
            let slot = comp_out.entry(out_key).or_default();
            for (&o_d, c_d) in target {
                add_into_target(slot, o_d, &(&factor * c_d));
            }
            if slot.is_empty() {
                comp_out.remove(&OCKey {
                    closed: w.clone(),
                    open: t.to_vec(),
                });
            }
        }
        // Advance.
        let mut j = m;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] < entry_lists[j].len() {
                break;
            }
            choice[j] = 0;
        }
    }
}

/// The closed-string action `l̂(D)`: pre-composes a two-block split of the
/// closed inputs with the closed-string operations,
/// `l̂(D)(y; x) = Σ ± D(l(y_{J_1}) ∧ y_{J_2}; x)` over splits with `J_1`
/// nonempty.  Vanishes on cochains supported at closed arity zero.
pub fn hat_action(
    lc: &SymCochain,
    d: &OCCochain,
    cap: Option<ArityCap>,
) -> Result<OCCochain, CoreError> {
    if !lc.is_endo() || !same_space(lc.source(), d.closed_space()) {
        return Err(CoreError::SpaceMismatch { context: "closed-string action" });
    }
    let b = d.closed_space().clone();
    let a = d.open_space().clone();
    let mut out = OCCochain::zero(&b, &a, d.target_space());
    if lc.is_zero() || d.is_zero() {
        return Ok(out);
    }
    let lc_max = lc.max_arity().unwrap_or(0);
    let d_max_l = d.max_closed_arity().unwrap_or(0);
    if d_max_l == 0 {
        return Ok(out);
    }
    let l_hi = cap_closed(cap, d_max_l - 1 + lc_max);
    let k_list: Vec<u32> = {
        let mut ks: Vec<u32> = d.support().iter().map(|&(_, k)| k).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    };
    for l_out in 1..=l_hi {
        for &k_out in &k_list {
            if let Some(c) = cap {
                if k_out > c.open {
                    continue;
                }
            }
            let mut comp_out: BTreeMap<OCKey, Target> = BTreeMap::new();
            let words = wedge_basis(&b, l_out);
            let tuples = open_tuples(&a, k_out);
            for s in lc.arities() {
                if s > l_out {
                    continue;
                }
                let l_d = l_out - s + 1;
                if d.component(l_d, k_out).is_none() {
                    continue;
                }
                let splits = splits_with_sizes(l_out as usize, &[s as usize, (l_out - s) as usize]);
                for w in &words {
                    for split in &splits {
                        let w1 = w.subword(&split[0]);
                        let w2 = w.subword(&split[1]);
                        let mut concat: Vec<u32> = w1.factors().to_vec();
                        concat.extend_from_slice(w2.factors());
                        let eps = match normalize_wedge(&b, &concat)? {
                            Normalized::Word { sign, .. } => sign,
                            Normalized::Zero => unreachable!("permutation of a valid word"),
                        };
                        let lc_target = match lc.component(s).and_then(|c| c.get(&w1)) {
                            Some(tg) => tg,
                            None => continue,
                        };
                        for (&b0, c1) in lc_target {
                            let mut host = Vec::with_capacity(w2.len() + 1);
                            host.push(b0);
                            host.extend_from_slice(w2.factors());
                            let (w_host, s2) = match normalize_wedge(&b, &host)? {
                                Normalized::Zero => continue,
                                Normalized::Word { word, sign } => (word, sign),
                            };
                            for t in &tuples {
                                let d_key = OCKey {
                                    closed: w_host.clone(),
                                    open: t.clone(),
                                };
                                if let Some(target) = d.constants(l_d, k_out, &d_key) {
                                    let factor = (eps * s2).apply(c1);
                                    let out_key = OCKey {
                                        closed: w.clone(),
                                        open: t.clone(),
                                    };
                                    let slot = comp_out.entry(out_key.clone()).or_default();
                                    for (&o, c_d) in target {
                                        add_into_target(slot, o, &(&factor * c_d));
                                    }
                                    if slot.is_empty() {
                                        comp_out.remove(&out_key);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out.insert_component_raw(l_out, k_out, comp_out);
        }
    }
    Ok(out)
}

/// The symmetric brace `l⟨k_1, …, k_n⟩`: distributes the closed inputs over
/// the arguments and the host with Koszul signs,
/// `Σ ± l(k_1(y_{J_1}) ∧ ⋯ ∧ k_n(y_{J_n}) ∧ y_K)`.  `n = 0` returns `l`.
pub fn sym_brace(
    lc: &SymCochain,
    ks: &[&SymCochain],
    cap: Option<u32>,
) -> Result<SymCochain, CoreError> {
    for k in ks {
        let ok = same_space(k.source(), lc.source()) && same_space(k.target(), lc.source());
        if !ok {
            return Err(CoreError::SpaceMismatch { context: "symmetric brace" });
        }
    }
    let n = ks.len();
    if n == 0 {
        let mut out = lc.clone();
        if let Some(c) = cap {
            let mut trimmed = SymCochain::zero(lc.source(), lc.target());
            for (l, comp) in lc.components() {
                if l <= c {
                    for (word, target) in comp {
                        for (&o, coeff) in target {
                            trimmed.add_entry(word.factors(), o, coeff)?;
                        }
                    }
                }
            }
            out = trimmed;
        }
        return Ok(out);
    }
    let source = lc.source().clone();
    let mut out = SymCochain::zero(&source, lc.target());
    if lc.is_zero() || ks.iter().any(|k| k.is_zero()) {
        return Ok(out);
    }
    let sum_k_max: u32 = ks.iter().map(|k| k.max_arity().unwrap_or(0)).sum();
    let natural = sum_k_max + lc.max_arity().unwrap_or(0).saturating_sub(n as u32);
    let l_hi = match cap {
        Some(c) => natural.min(c),
        None => natural,
    };
    for l_out in 1..=l_hi {
        let words = wedge_basis(&source, l_out);
        // Arity combos: sizes for each argument block plus the residual block.
        let mut combos: Vec<(Vec<u32>, u32)> = Vec::new();
        let mut sizes = vec![0u32; n];
        collect_sym_combos(lc, ks, l_out, 0, 0, &mut sizes, &mut combos);
        if combos.is_empty() {
            continue;
        }
        for w in &words {
            for (arg_sizes, rest) in &combos {
                let mut block_sizes: Vec<usize> =
                    arg_sizes.iter().map(|&s| s as usize).collect();
                block_sizes.push(*rest as usize);
                let splits = splits_with_sizes(l_out as usize, &block_sizes);
                for split in &splits {
                    let arg_words: Vec<WedgeWord> =
                        (0..n).map(|j| w.subword(&split[j])).collect();
                    let rest_word = w.subword(&split[n]);
                    let mut concat: Vec<u32> = Vec::with_capacity(l_out as usize);
                    for aw in &arg_words {
                        concat.extend_from_slice(aw.factors());
                    }
                    concat.extend_from_slice(rest_word.factors());
                    let eps = match normalize_wedge(&source, &concat)? {
                        Normalized::Word { sign, .. } => sign,
                        Normalized::Zero => unreachable!("permutation of a valid word"),
                    };
                    let p_blocks: Vec<i64> = arg_words
                        .iter()
                        .map(|aw| parity(aw.shifted_degree_sum(&source)))
                        .collect();
                    // Entry lists per argument.
                    let mut entry_lists: Vec<Vec<(u32, &Scalar, i64)>> = Vec::with_capacity(n);
                    let mut missing = false;
                    for j in 0..n {
                        match ks[j]
                            .component(arg_sizes[j])
                            .and_then(|c| c.get(&arg_words[j]))
                        {
                            Some(tg) => entry_lists.push(
                                tg.iter()
                                    .map(|(&o, c)| {
                                        (o, c, parity(ks[j].entry_degree(&arg_words[j], o)))
                                    })
                                    .collect(),
                            ),
                            None => {
                                missing = true;
                                break;
                            }
                        }
                    }
                    if missing {
                        continue;
                    }
                    let host_arity = n as u32 + rest;
                    let host_comp = match lc.component(host_arity) {
                        Some(c) => c,
                        None => continue,
                    };
                    let mut choice = vec![0usize; n];
                    loop {
                        let mut coeff = Scalar::one();
                        let mut dagger = 0i64;
                        let mut host_factors: Vec<u32> = Vec::with_capacity(host_arity as usize);
                        for j in 0..n {
                            let (o, c, pe) = entry_lists[j][choice[j]];
                            coeff *= c;
                            for i in 0..j {
                                // Σ_{i<j} |k_j|·|y_{J_i}| with j the later argument.
                                dagger += pe * p_blocks[i];
                            }
                            host_factors.push(o);
                        }
                        host_factors.extend_from_slice(rest_word.factors());
                        if let Normalized::Word { word, sign: s3 } =
                            normalize_wedge(&source, &host_factors)?
                        {
                            if let Some(target) = host_comp.get(&word) {
                                let total = eps * Sign::from_parity(dagger) * s3;
                                let factor = total.apply(&coeff);
                                for (&o, c0) in target {
                                    out.add_entry(w.factors(), o, &(&factor * c0))?;
                                }
                            }
                        }
                        let mut j = n;
                        let mut done = false;
                        loop {
                            if j == 0 {
                                done = true;
                                break;
                            }
                            j -= 1;
                            choice[j] += 1;
                            if choice[j] < entry_lists[j].len() {
                                break;
                            }
                            choice[j] = 0;
                        }
                        if done {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn collect_sym_combos(
    lc: &SymCochain,
    ks: &[&SymCochain],
    l_out: u32,
    j: usize,
    sum: u32,
    sizes: &mut Vec<u32>,
    out: &mut Vec<(Vec<u32>, u32)>,
) {
    let n = ks.len();
    if j == n {
        let rest = match l_out.checked_sub(sum) {
            Some(r) => r,
            None => return,
        };
        if lc.component(n as u32 + rest).is_some() {
            out.push((sizes.clone(), rest));
        }
        return;
    }
    for s in ks[j].arities() {
        if sum + s > l_out {
            continue;
        }
        sizes[j] = s;
        collect_sym_combos(lc, ks, l_out, j + 1, sum + s, sizes, out);
    }
}

/// Graded symmetric composition `k_2 · k_1`: sums over unordered set
/// partitions of the inputs into nonempty blocks, each fed through `k_1`,
/// with the block outputs wedged into `k_2`.  Blocks are taken in the
/// canonical order of their minima.
pub fn sym_compose(
    k2: &SymCochain,
    k1: &SymCochain,
    cap: Option<u32>,
) -> Result<SymCochain, CoreError> {
    if !same_space(k1.target(), k2.source()) {
        return Err(CoreError::SpaceMismatch { context: "symmetric composition" });
    }
    let source = k1.source().clone();
    let mid = k2.source().clone();
    let mut out = SymCochain::zero(&source, k2.target());
    if k1.is_zero() || k2.is_zero() {
        return Ok(out);
    }
    let counts: Vec<usize> = k2.arities().iter().map(|&s| s as usize).collect();
    let sizes: Vec<usize> = k1.arities().iter().map(|&s| s as usize).collect();
    let natural = k2.max_arity().unwrap_or(0) * k1.max_arity().unwrap_or(0);
    let l_hi = match cap {
        Some(c) => natural.min(c),
        None => natural,
    };
    for l_out in 1..=l_hi {
        let words = wedge_basis(&source, l_out);
        let partitions = set_partitions_filtered(l_out as usize, &counts, &sizes);
        if partitions.is_empty() {
            continue;
        }
        for w in &words {
            for blocks in &partitions {
                let s = blocks.len();
                let block_words: Vec<WedgeWord> =
                    blocks.iter().map(|b| w.subword(b)).collect();
                let mut concat: Vec<u32> = Vec::with_capacity(l_out as usize);
                for bw in &block_words {
                    concat.extend_from_slice(bw.factors());
                }
                let eps = match normalize_wedge(&source, &concat)? {
                    Normalized::Word { sign, .. } => sign,
                    Normalized::Zero => unreachable!("permutation of a valid word"),
                };
                let mut entry_lists: Vec<Vec<(u32, &Scalar)>> = Vec::with_capacity(s);
                let mut missing = false;
                for (i, bw) in block_words.iter().enumerate() {
                    match k1
                        .component(blocks[i].len() as u32)
                        .and_then(|c| c.get(bw))
                    {
                        Some(tg) => entry_lists.push(tg.iter().map(|(&o, c)| (o, c)).collect()),
                        None => {
                            missing = true;
                            break;
                        }
                    }
                }
                if missing {
                    continue;
                }
                let host_comp = match k2.component(s as u32) {
                    Some(c) => c,
                    None => continue,
                };
                let mut choice = vec![0usize; s];
                loop {
                    let mut coeff = Scalar::one();
                    let mut mid_factors: Vec<u32> = Vec::with_capacity(s);
                    for (i, &c) in choice.iter().enumerate() {
                        let (o, sc) = entry_lists[i][c];
                        coeff *= sc;
                        mid_factors.push(o);
                    }
                    if let Normalized::Word { word, sign: s3 } =
                        normalize_wedge(&mid, &mid_factors)?
                    {
                        if let Some(target) = host_comp.get(&word) {
                            let factor = (eps * s3).apply(&coeff);
                            for (&o, c0) in target {
                                out.add_entry(w.factors(), o, &(&factor * c0))?;
                            }
                        }
                    }
                    let mut i = s;
                    let mut done = false;
                    loop {
                        if i == 0 {
                            done = true;
                            break;
                        }
                        i -= 1;
                        choice[i] += 1;
                        if choice[i] < entry_lists[i].len() {
                            break;
                        }
                        choice[i] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Literal-formula evaluation of `D{E_1,…,E_m}` on basis inputs, summing
/// over the raw partition enumerators with Koszul signs from the inversion
/// formula.  This is the reference route used to cross-check the assembled
/// structure constants; it intentionally shares no sign bookkeeping with
/// [`brace`].
///
/// Requires homogeneous `E_j` (their degrees enter the sign).
pub fn evaluate_brace_on_basis(
    d: &OCCochain,
    es: &[&OCCochain],
    closed: &[u32],
    open: &[u32],
) -> Result<Vector, CoreError> {
    let m = es.len();
    let b = d.closed_space();
    let a = d.open_space();
    let mut e_degrees = Vec::with_capacity(m);
    for e in es {
        match e.degree().homogeneous() {
            Some(deg) => e_degrees.push(deg),
            None => {
                if e.is_zero() {
                    e_degrees.push(0);
                } else {
                    return Err(CoreError::Inhomogeneous { context: "brace evaluation" });
                }
            }
        }
    }
    let l = closed.len();
    let k = open.len();
    let degrees: Vec<i64> = closed.iter().map(|&i| b.shifted_degree(i)).collect();
    let open_deg: Vec<i64> = open.iter().map(|&i| a.shifted_degree(i)).collect();
    let mut result = Vector::zero(d.target_space());
    for part in ordered_partitions(l, m + 1) {
        // blocks[0] feeds D, blocks[j] feeds E_j.
        let seq: Vec<usize> = part.blocks.iter().flatten().copied().collect();
        let mut perm = vec![0usize; l];
        for (new_pos, &orig) in seq.iter().enumerate() {
            perm[orig] = new_pos;
        }
        let eps = koszul_sign(&degrees, &perm)?;
        for dotted in dotted_partitions(k, 2 * m + 1) {
            // Interval 0 is I_0; interval 2j−1 is K_j; interval 2j is I_j.
            let mut inner_values = Vec::with_capacity(m);
            for j in 1..=m {
                let (ks_start, ks_end) = dotted.blocks[2 * j - 1];
                let closed_vecs: Vec<Vector> = part.blocks[j]
                    .iter()
                    .map(|&p| Vector::basis(b, closed[p]))
                    .collect::<Result<_, _>>()?;
                let open_vecs: Vec<Vector> = (ks_start..ks_end)
                    .map(|p| Vector::basis(a, open[p]))
                    .collect::<Result<_, _>>()?;
                inner_values.push(es[j - 1].evaluate(&closed_vecs, &open_vecs)?);
            }
            let closed_vecs: Vec<Vector> = part.blocks[0]
                .iter()
                .map(|&p| Vector::basis(b, closed[p]))
                .collect::<Result<_, _>>()?;
            let mut open_vecs: Vec<Vector> = Vec::new();
            let (i0s, i0e) = dotted.blocks[0];
            for p in i0s..i0e {
                open_vecs.push(Vector::basis(a, open[p])?);
            }
            for j in 1..=m {
                open_vecs.push(inner_values[j - 1].clone());
                let (is_, ie_) = dotted.blocks[2 * j];
                for p in is_..ie_ {
                    open_vecs.push(Vector::basis(a, open[p])?);
                }
            }
            let value = d.evaluate(&closed_vecs, &open_vecs)?;
            if value.is_zero() {
                continue;
            }
            // Literal sign: Σ_j (Σ_{i<j}|x_{I_i}| + Σ_{i<j}|x_{K_i}|)(|E_j|+|y_{L_j}|)
            //             + Σ_j (|y_J| + Σ_{i<j}|y_{L_i}|)|E_j| + ε.
            let block_deg = |blk: &[usize]| -> i64 { blk.iter().map(|&p| degrees[p]).sum() };
            let interval_deg = |(s, e): (usize, usize)| -> i64 {
                (s..e).map(|p| open_deg[p]).sum()
            };
            let y_j_deg = block_deg(&part.blocks[0]);
            let mut star = 0i64;
            for j in 1..=m {
                let mut opens_before = 0i64;
                for i in 0..j {
                    opens_before += interval_deg(dotted.blocks[2 * i]);
                }
                for i in 1..j {
                    opens_before += interval_deg(dotted.blocks[2 * i - 1]);
                }
                let mut closed_before = y_j_deg;
                for i in 1..j {
                    closed_before += block_deg(&part.blocks[i]);
                }
                let l_j_deg = block_deg(&part.blocks[j]);
                star += opens_before * (e_degrees[j - 1] + l_j_deg)
                    + closed_before * e_degrees[j - 1];
            }
            let sign = eps * Sign::from_parity(star);
            let term = value.scale(&sign.scalar());
            result = result.add(&term)?;
        }
    }
    Ok(result)
}

/// Literal-formula evaluation of the closed-string action on basis inputs.
pub fn evaluate_hat_on_basis(
    lc: &SymCochain,
    d: &OCCochain,
    closed: &[u32],
    open: &[u32],
) -> Result<Vector, CoreError> {
    let b = d.closed_space();
    let a = d.open_space();
    let degrees: Vec<i64> = closed.iter().map(|&i| b.shifted_degree(i)).collect();
    let mut result = Vector::zero(d.target_space());
    for part in ordered_partitions(closed.len(), 2) {
        if part.blocks[0].is_empty() {
            continue;
        }
        let seq: Vec<usize> = part.blocks.iter().flatten().copied().collect();
        let mut perm = vec![0usize; closed.len()];
        for (new_pos, &orig) in seq.iter().enumerate() {
            perm[orig] = new_pos;
        }
        let eps = koszul_sign(&degrees, &perm)?;
        let j1_vecs: Vec<Vector> = part.blocks[0]
            .iter()
            .map(|&p| Vector::basis(b, closed[p]))
            .collect::<Result<_, _>>()?;
        let inner = lc.evaluate(&j1_vecs)?;
        let mut host_closed = vec![inner];
        for &p in &part.blocks[1] {
            host_closed.push(Vector::basis(b, closed[p])?);
        }
        let open_vecs: Vec<Vector> = open
            .iter()
            .map(|&x| Vector::basis(a, x))
            .collect::<Result<_, _>>()?;
        let value = d.evaluate(&host_closed, &open_vecs)?;
        result = result.add(&value.scale(&eps.scalar()))?;
    }
    Ok(result)
}

/// Literal-formula evaluation of the symmetric brace on basis inputs.
/// Requires homogeneous arguments.
pub fn evaluate_sym_brace_on_basis(
    lc: &SymCochain,
    ks: &[&SymCochain],
    closed: &[u32],
) -> Result<Vector, CoreError> {
    let n = ks.len();
    let source = lc.source();
    let mut k_degrees = Vec::with_capacity(n);
    for k in ks {
        match k.degree().homogeneous() {
            Some(deg) => k_degrees.push(deg),
            None => {
                if k.is_zero() {
                    k_degrees.push(0);
                } else {
                    return Err(CoreError::Inhomogeneous { context: "symmetric brace evaluation" });
                }
            }
        }
    }
    let degrees: Vec<i64> = closed.iter().map(|&i| source.shifted_degree(i)).collect();
    let mut result = Vector::zero(lc.target());
    for part in ordered_partitions(closed.len(), n + 1) {
        // blocks[0..n] feed the arguments, blocks[n] stays.
        if part.blocks[..n].iter().any(|blk| blk.is_empty()) {
            continue;
        }
        let seq: Vec<usize> = part.blocks.iter().flatten().copied().collect();
        let mut perm = vec![0usize; closed.len()];
        for (new_pos, &orig) in seq.iter().enumerate() {
            perm[orig] = new_pos;
        }
        let eps = koszul_sign(&degrees, &perm)?;
        let mut dagger = 0i64;
        for i in 0..n {
            for j in 0..i {
                let block_deg: i64 = part.blocks[j].iter().map(|&p| degrees[p]).sum();
                dagger += k_degrees[i] * block_deg;
            }
        }
        let mut host_inputs = Vec::with_capacity(n + part.blocks[n].len());
        for (j, k) in ks.iter().enumerate() {
            let vecs: Vec<Vector> = part.blocks[j]
                .iter()
                .map(|&p| Vector::basis(source, closed[p]))
                .collect::<Result<_, _>>()?;
            host_inputs.push(k.evaluate(&vecs)?);
        }
        for &p in &part.blocks[n] {
            host_inputs.push(Vector::basis(source, closed[p])?);
        }
        let value = lc.evaluate(&host_inputs)?;
        let sign = eps * Sign::from_parity(dagger);
        result = result.add(&value.scale(&sign.scalar()))?;
    }
    Ok(result)
}
