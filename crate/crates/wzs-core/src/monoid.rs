//! The monoid of weighted zero-sum sequences over a support set: atoms,
//! Davenport constants, factorizations, sets of lengths, distances, the
//! catenary degree, the omega invariant, the set of distances, and unions of
//! sets of lengths.
//!
//! Quantities that are suprema over the whole monoid (catenary degree, omega,
//! set of distances, unions of sets of lengths) are computed by bounded
//! exploration; the API always reports whether the returned value is exact
//! under a certificate or only a lower bound at the given cap.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use crate::error::Error;
use crate::group::{Elem, FiniteAbelianGroup, GSubset, WeightSet};
use crate::sequence::Sequence;
use crate::Result;

/// A set of factorization lengths.
pub type LengthSet = BTreeSet<u32>;

static NEXT_HANDLE_ID: AtomicU64 = AtomicU64::new(1);

/// A factorization of a member into atoms, as a sorted multiset of indices
/// into the owning handle's atom list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    handle_id: u64,
    atom_indices: Vec<usize>,
}

impl Factorization {
    pub fn indices(&self) -> &[usize] {
        &self.atom_indices
    }

    /// Number of atoms counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.atom_indices.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.atom_indices.is_empty()
    }
}

/// Distance between two factorizations: cancel the common multiset of atoms
/// and take the larger residual length.
pub fn distance(z1: &Factorization, z2: &Factorization) -> Result<u32> {
    if z1.handle_id != z2.handle_id {
        return Err(Error::HandleMismatch);
    }
    let (mut i, mut j) = (0, 0);
    let (mut rest1, mut rest2) = (0u32, 0u32);
    while i < z1.atom_indices.len() && j < z2.atom_indices.len() {
        match z1.atom_indices[i].cmp(&z2.atom_indices[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                rest1 += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                rest2 += 1;
                j += 1;
            }
        }
    }
    rest1 += (z1.atom_indices.len() - i) as u32;
    rest2 += (z2.atom_indices.len() - j) as u32;
    Ok(rest1.max(rest2))
}

/// The monoid of weighted zero-sum sequences over a support set, with its
/// frozen atom list and cached length tables.
pub struct MonoidHandle {
    id: u64,
    group: Arc<FiniteAbelianGroup>,
    support: Vec<Elem>,
    gamma: WeightSet,
    atoms: OnceLock<Vec<Sequence>>,
    lengths_cache: RefCell<Option<(u32, Rc<HashMap<Vec<u16>, u64>>)>>,
}

impl MonoidHandle {
    /// The monoid over the full group.
    pub fn new(group: Arc<FiniteAbelianGroup>, gamma: WeightSet) -> Self {
        let support = group.elements().collect();
        Self::make(group, support, gamma)
    }

    /// The monoid over an explicit support subset.
    pub fn with_support(
        group: Arc<FiniteAbelianGroup>,
        mut support: Vec<Elem>,
        gamma: WeightSet,
    ) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        if support.iter().any(|e| (e.0 as usize) >= group.order()) {
            return Err(Error::GroupMismatch);
        }
        Ok(Self::make(group, support, gamma))
    }

    fn make(group: Arc<FiniteAbelianGroup>, support: Vec<Elem>, gamma: WeightSet) -> Self {
        MonoidHandle {
            id: NEXT_HANDLE_ID.fetch_add(1, AtomicOrdering::Relaxed),
            group,
            support,
            gamma,
            atoms: OnceLock::new(),
            lengths_cache: RefCell::new(None),
        }
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn gamma(&self) -> &WeightSet {
        &self.gamma
    }

    pub fn support(&self) -> &[Elem] {
        &self.support
    }

    fn support_mask(&self) -> GSubset {
        let mut m = GSubset::EMPTY;
        for &e in &self.support {
            m.insert(e);
        }
        m
    }

    /// Membership: supported on the handle's support and a weighted zero-sum.
    pub fn is_member(&self, s: &Sequence) -> bool {
        s.group().same_group(&self.group)
            && s.support().0 & !self.support_mask().0 == 0
            && s.is_wzs(&self.gamma)
    }

    fn seq_from_support_counts(&self, counts: &[u16]) -> Sequence {
        let mut full = vec![0u32; self.group.order()];
        for (i, &c) in counts.iter().enumerate() {
            full[self.support[i].0 as usize] = c as u32;
        }
        Sequence::from_counts(self.group.clone(), full).expect("support counts")
    }

    fn support_counts(&self, s: &Sequence) -> Vec<u16> {
        self.support
            .iter()
            .map(|&e| s.multiplicity(e) as u16)
            .collect()
    }

    /// The atoms, sorted by (length, exponent table). Computed once and
    /// frozen: all member sequences of length at most `|G|` (the large
    /// Davenport bound) are enumerated, and a member is kept iff it admits
    /// no splitting into two nonempty members.
    pub fn atoms(&self) -> &[Sequence] {
        self.atoms.get_or_init(|| self.compute_atoms())
    }

    fn compute_atoms(&self) -> Vec<Sequence> {
        let bound = self.group.order() as u32;
        let mut out = Vec::new();
        let mut buf = vec![0u16; self.support.len()];
        for total in 1..=bound {
            each_composition(&mut buf, 0, total, &mut |counts| {
                let s = self.seq_from_support_counts(counts);
                if s.is_wzs(&self.gamma) && !has_member_split(&s, &self.gamma) {
                    out.push(s);
                }
            });
        }
        out.sort_by(Sequence::canonical_cmp);
        out
    }

    pub fn atom_index(&self, s: &Sequence) -> Option<usize> {
        self.atoms().iter().position(|a| a == s)
    }

    /// Large Davenport constant: the maximal atom length.
    pub fn davenport_large(&self) -> u32 {
        self.atoms().iter().map(Sequence::len).max().unwrap_or(0)
    }

    /// Small Davenport constant: the maximal length of a weighted
    /// zero-sum-free sequence over the support.
    pub fn davenport_small(&self) -> u32 {
        fn rec(
            h: &MonoidHandle,
            start: usize,
            reach: GSubset,
            len: u32,
            best: &mut u32,
        ) {
            for i in start..h.support.len() {
                let orbit = h.gamma.orbit(h.support[i]);
                let next = reach.union(h.group.sumset(reach, orbit)).union(orbit);
                if !next.contains(h.group.zero()) {
                    *best = (*best).max(len + 1);
                    rec(h, i, next, len + 1, best);
                }
            }
        }
        let mut best = 0;
        rec(self, 0, GSubset::EMPTY, 0, &mut best);
        best
    }

    /// All factorizations of `b` into atoms, each as a sorted multiset of
    /// atom indices. The empty sequence has exactly the empty factorization.
    pub fn factorizations(&self, b: &Sequence) -> Result<Vec<Factorization>> {
        if !self.is_member(b) {
            return Err(Error::NotInMonoid);
        }
        let atoms = self.atoms();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.fact_rec(atoms, b.clone(), 0, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    fn fact_rec(
        &self,
        atoms: &[Sequence],
        rem: Sequence,
        min_idx: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Factorization>,
    ) {
        if rem.is_empty() {
            out.push(Factorization {
                handle_id: self.id,
                atom_indices: cur.clone(),
            });
            return;
        }
        for i in min_idx..atoms.len() {
            if atoms[i].len() > rem.len() {
                break; // atoms are sorted by length
            }
            if !atoms[i].is_subsequence_of(&rem) {
                continue;
            }
            let q = atoms[i].quotient_in(&rem).expect("subsequence checked");
            // the residue must itself be a member or nothing extends
            if q.is_wzs(&self.gamma) {
                cur.push(i);
                self.fact_rec(atoms, q, i, cur, out);
                cur.pop();
            }
        }
    }

    pub fn set_of_lengths(&self, b: &Sequence) -> Result<LengthSet> {
        Ok(self
            .factorizations(b)?
            .iter()
            .map(Factorization::len)
            .collect())
    }

    /// Least threshold `N` for which the factorization graph of `b` with
    /// edges of distance at most `N` is connected; 0 when `|Z(b)| <= 1`.
    pub fn catenary_of_element(&self, b: &Sequence) -> Result<u32> {
        let zs = self.factorizations(b)?;
        if zs.len() <= 1 {
            return Ok(0);
        }
        let mut edges = Vec::new();
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                edges.push((distance(&zs[i], &zs[j])?, i, j));
            }
        }
        edges.sort_unstable();
        let mut dsu = Dsu::new(zs.len());
        let mut components = zs.len();
        let mut k = 0;
        while k < edges.len() {
            let d = edges[k].0;
            while k < edges.len() && edges[k].0 == d {
                if dsu.union(edges[k].1, edges[k].2) {
                    components -= 1;
                }
                k += 1;
            }
            if components == 1 {
                return Ok(d);
            }
        }
        unreachable!("distance graph on a finite Z(b) is complete")
    }

    /// When the monoid is the plus-minus monoid over a full odd prime cyclic
    /// group, verifies exhaustively that every sequence of `p - 1` nonzero
    /// elements has full weighted sum set. This makes every sequence over
    /// the nonzero elements of length at least `p - 1` a member, which is
    /// the certificate behind the exact values of the catenary degree and
    /// the omega invariant for these groups.
    fn prime_cyclic_pm_certificate(&self) -> Option<u32> {
        let p = self.group.order() as u64;
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return None;
        }
        if self.support.len() != self.group.order() {
            return None;
        }
        if !self.gamma.is_exactly_pm(&self.group) {
            return None;
        }
        let nonzero: Vec<Elem> = self.group.elements().skip(1).collect();
        let mut buf = vec![0u16; nonzero.len()];
        let mut ok = true;
        each_composition(&mut buf, 0, (p - 1) as u32, &mut |counts| {
            let mut acc = GSubset::singleton(self.group.zero());
            for (i, &c) in counts.iter().enumerate() {
                let orbit = self.gamma.orbit(nonzero[i]);
                for _ in 0..c {
                    acc = self.group.sumset(acc, orbit);
                }
            }
            ok &= acc == self.group.full_set();
        });
        if ok {
            Some(p as u32)
        } else {
            None
        }
    }

    /// Maximum of `catenary_of_element` over all members of length at most
    /// `total_length_bound`. The flag is true when a certificate pins the
    /// supremum: the factorial case `|G| <= 2`, or the odd-prime-cyclic
    /// plus-minus case where the catenary degree equals `p`.
    pub fn catenary_degree(&self, total_length_bound: u32) -> Result<(u32, bool)> {
        let mut best = 0;
        let mut buf = vec![0u16; self.support.len()];
        for total in 2..=total_length_bound {
            let mut err = None;
            each_composition(&mut buf, 0, total, &mut |counts| {
                if err.is_some() {
                    return;
                }
                let s = self.seq_from_support_counts(counts);
                if s.is_wzs(&self.gamma) {
                    match self.catenary_of_element(&s) {
                        Ok(c) => best = best.max(c),
                        Err(e) => err = Some(e),
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        if self.group.order() <= 2 {
            // every atom is prime, so all catenary degrees vanish
            return Ok((best, best == 0));
        }
        if let Some(p) = self.prime_cyclic_pm_certificate() {
            if best == p {
                return Ok((best, true));
            }
        }
        Ok((best, false))
    }

    /// Omega invariant of the atom `u`: the largest size of a minimal
    /// multiset of atoms whose product is divisible by `u`, searched over
    /// multisets of at most `cap` atoms. Exact when `u` is the zero atom
    /// (which is prime) or under the odd-prime-cyclic certificate with
    /// `cap >= p`.
    pub fn omega_of_atom(&self, u: &Sequence, cap: u32) -> Result<(u32, bool)> {
        let atoms = self.atoms().to_vec();
        if self.atom_index(u).is_none() {
            return Err(Error::NotAnAtom);
        }
        let zero_atom = Sequence::from_elems(self.group.clone(), &[self.group.zero()]);
        if *u == zero_atom {
            return Ok((1, true));
        }
        let divides = |prod: &Sequence| -> bool {
            u.is_subsequence_of(prod) && u.quotient_in(prod).expect("checked").is_wzs(&self.gamma)
        };
        let mut best = 0u32;
        // Depth-first over non-decreasing atom index chains; divisibility is
        // monotone under adding atoms, so a chain stops at its first
        // divisible product — longer chains through it are never minimal.
        fn rec(
            atoms: &[Sequence],
            divides: &dyn Fn(&Sequence) -> bool,
            prod: &Sequence,
            chosen: &mut Vec<usize>,
            cap: u32,
            best: &mut u32,
        ) {
            if chosen.len() as u32 >= cap {
                return;
            }
            let start = chosen.last().copied().unwrap_or(0);
            for i in start..atoms.len() {
                let next = prod.mul(&atoms[i]).expect("same group");
                chosen.push(i);
                if divides(&next) {
                    let minimal = chosen.iter().collect::<BTreeSet<_>>().iter().all(|&&j| {
                        let smaller = atoms[j].quotient_in(&next).expect("chosen atom");
                        !divides(&smaller)
                    });
                    if minimal {
                        *best = (*best).max(chosen.len() as u32);
                    }
                } else {
                    rec(atoms, divides, &next, chosen, cap, best);
                }
                chosen.pop();
            }
        }
        let empty = Sequence::empty(self.group.clone());
        let mut chosen = Vec::new();
        rec(&atoms, &divides, &empty, &mut chosen, cap, &mut best);
        let exact = match self.prime_cyclic_pm_certificate() {
            Some(p) => cap >= p,
            None => false,
        };
        Ok((best, exact))
    }

    /// Max of `omega_of_atom` over all atoms.
    pub fn omega_monoid(&self, cap: u32) -> Result<(u32, bool)> {
        let atoms = self.atoms().to_vec();
        let mut best = 0;
        let mut exact = true;
        for u in &atoms {
            let (v, e) = self.omega_of_atom(u, cap)?;
            best = best.max(v);
            exact &= e;
        }
        Ok((best, exact))
    }

    /// Length sets of all members of length at most `bound`, keyed by the
    /// exponent table over the support, as bitmasks (bit `l` set iff the
    /// member has a factorization into `l` atoms). Dynamic program over the
    /// graded member poset; cached per handle.
    fn lengths_table(&self, bound: u32) -> Rc<HashMap<Vec<u16>, u64>> {
        assert!(bound < 64, "length bitmask holds lengths below 64");
        if let Some((b, table)) = self.lengths_cache.borrow().as_ref() {
            if *b >= bound {
                return table.clone();
            }
        }
        let atoms: Vec<(u32, Vec<u16>)> = self
            .atoms()
            .iter()
            .map(|a| (a.len(), self.support_counts(a)))
            .collect();
        let k = self.support.len();
        let mut dp: HashMap<Vec<u16>, u64> = HashMap::new();
        dp.insert(vec![0u16; k], 1);
        let mut buf = vec![0u16; k];
        let mut sub = vec![0u16; k];
        for total in 1..=bound {
            let mut inserts: Vec<(Vec<u16>, u64)> = Vec::new();
            each_composition(&mut buf, 0, total, &mut |counts| {
                let mut mask = 0u64;
                'atoms: for (alen, ac) in &atoms {
                    if *alen > total {
                        break;
                    }
                    for i in 0..k {
                        if ac[i] > counts[i] {
                            continue 'atoms;
                        }
                        sub[i] = counts[i] - ac[i];
                    }
                    if let Some(m) = dp.get(sub.as_slice()) {
                        mask |= m << 1;
                    }
                }
                if mask != 0 {
                    inserts.push((counts.to_vec(), mask));
                }
            });
            dp.extend(inserts);
        }
        let table = Rc::new(dp);
        *self.lengths_cache.borrow_mut() = Some((bound, table.clone()));
        table
    }

    /// Set of distances at cap: union of successive gaps of `L(b)` over all
    /// members of length at most `bound`. Monotone in the bound.
    pub fn delta_set(&self, total_length_bound: u32) -> BTreeSet<u32> {
        let table = self.lengths_table(total_length_bound);
        let mut out = BTreeSet::new();
        for (key, &mask) in table.iter() {
            if key.iter().map(|&c| c as u32).sum::<u32>() > total_length_bound {
                continue;
            }
            let mut prev: Option<u32> = None;
            for l in 0..64 {
                if mask >> l & 1 == 1 {
                    if let Some(p) = prev {
                        if l - p > 0 && p > 0 {
                            out.insert(l - p);
                        }
                    }
                    prev = Some(l);
                }
            }
        }
        out.remove(&0);
        out
    }

    /// Union of the sets of lengths of all members whose length set contains
    /// `k`, truncated at the member-length bound. The flag is the exactness
    /// rule `bound >= k * D` (a member with a length-`k` factorization has
    /// length at most `k * D`).
    pub fn unions_uk(&self, k: u32, total_length_bound: u32) -> (BTreeSet<u32>, bool) {
        let table = self.lengths_table(total_length_bound);
        let mut mask_union = 0u64;
        for (key, &mask) in table.iter() {
            if key.iter().map(|&c| c as u32).sum::<u32>() > total_length_bound {
                continue;
            }
            if k < 64 && mask >> k & 1 == 1 {
                mask_union |= mask;
            }
        }
        let mut out = BTreeSet::new();
        for l in 1..64 {
            if mask_union >> l & 1 == 1 {
                out.insert(l);
            }
        }
        let exact = total_length_bound >= k.saturating_mul(self.davenport_large());
        (out, exact)
    }

    pub fn rho_k(&self, k: u32, total_length_bound: u32) -> Result<(u32, bool)> {
        let (set, exact) = self.unions_uk(k, total_length_bound);
        let max = set
            .iter()
            .next_back()
            .copied()
            .ok_or_else(|| Error::OutOfRange(format!("U_{k} empty at bound {total_length_bound}")))?;
        Ok((max, exact))
    }

    pub fn lambda_k(&self, k: u32, total_length_bound: u32) -> Result<(u32, bool)> {
        let (set, exact) = self.unions_uk(k, total_length_bound);
        let min = set
            .iter()
            .next()
            .copied()
            .ok_or_else(|| Error::OutOfRange(format!("U_{k} empty at bound {total_length_bound}")))?;
        Ok((min, exact))
    }
}

/// Piecewise interval prediction for `U_k` of the plus-minus monoid over an
/// odd group with `D(G) = 1 + sum(n_i - 1) >= 3`. Hypotheses are verified
/// computationally: the classical Davenport constant of the group must match
/// the lower bound formula.
pub fn theorem62_prediction(group: &Arc<FiniteAbelianGroup>, k: u32) -> Result<(u32, u32)> {
    if group.order() % 2 == 0 {
        return Err(Error::HypothesisNotMet("|G| must be odd".into()));
    }
    let d_star: u32 = 1 + group
        .invariant_factors()
        .iter()
        .map(|&n| n as u32 - 1)
        .sum::<u32>();
    let classical = MonoidHandle::new(group.clone(), WeightSet::identity(group));
    let d_cap = classical.davenport_large();
    if d_cap != d_star || d_cap < 3 {
        return Err(Error::HypothesisNotMet(format!(
            "need D(G) = 1 + sum(n_i - 1) >= 3, got D = {d_cap}, formula {d_star}"
        )));
    }
    if k < 2 {
        return Err(Error::OutOfRange("k must be at least 2".into()));
    }
    let big_d = d_cap;
    let small_d = big_d - 1;
    let l = k / big_d;
    let j = k % big_d;
    let lo = if l == 0 {
        2
    } else if j == 0 {
        2 * l
    } else if 2 * j <= small_d {
        2 * l + 1
    } else {
        2 * l + 2
    };
    Ok((lo, k * big_d / 2))
}

/// Witness for `{2, j}` as a set of lengths over the plus-minus monoid of an
/// odd cyclic group: `b = g^n * g^(n-k) * (kg)` with `k = n - j + 1` has
/// length set `{2, n - k + 1} = {2, j}`; `k = 1` degenerates to `g^(2n)`.
pub fn lemma63_witness(n: u64, j: u32) -> Result<(Sequence, LengthSet)> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::OutOfRange(format!("n = {n} must be odd and >= 3")));
    }
    if j < 3 || j as u64 > n {
        return Err(Error::OutOfRange(format!("j = {j} must lie in [3, {n}]")));
    }
    let group = FiniteAbelianGroup::new(&[n])?;
    let k = n - j as u64 + 1;
    let g = group.from_coords(&[1])?;
    let kg = group.from_coords(&[k as i64])?;
    let mut b = Sequence::empty(group.clone());
    for _ in 0..n {
        b.push(g);
    }
    for _ in 0..(n - k) {
        b.push(g);
    }
    b.push(kg);
    let handle = MonoidHandle::new(group.clone(), WeightSet::plus_minus(&group));
    let lengths = handle.set_of_lengths(&b)?;
    let expect: LengthSet = [2u32, j].into_iter().collect();
    if lengths != expect {
        return Err(Error::HypothesisNotMet(format!(
            "witness length set {lengths:?} differs from {{2, {j}}}"
        )));
    }
    Ok((b, lengths))
}

/// True when the sequence splits as a product of two nonempty members.
fn has_member_split(s: &Sequence, gamma: &WeightSet) -> bool {
    let positions: Vec<(usize, u32)> = s
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, &v)| (i, v))
        .collect();
    let mut sub = vec![0u32; positions.len()];
    loop {
        // odometer step over all sub-multisets
        let mut pos = 0;
        loop {
            if pos == positions.len() {
                return false;
            }
            if sub[pos] < positions[pos].1 {
                sub[pos] += 1;
                break;
            }
            sub[pos] = 0;
            pos += 1;
        }
        if sub.iter().zip(&positions).all(|(&a, &(_, b))| a == b) {
            continue; // the full sequence is not a proper part
        }
        let group = s.group().clone();
        let mut v_counts = vec![0u32; group.order()];
        for (&c, &(i, _)) in sub.iter().zip(&positions) {
            v_counts[i] = c;
        }
        let v = Sequence::from_counts(group, v_counts).expect("counts sized to group");
        if v.is_wzs(gamma) && v.quotient_in(s).expect("sub-multiset").is_wzs(gamma) {
            return true;
        }
    }
}

/// Calls `f` on every vector of `buf.len()` nonnegative integers with the
/// given sum.
fn each_composition(buf: &mut Vec<u16>, pos: usize, remaining: u32, f: &mut dyn FnMut(&[u16])) {
    if buf.is_empty() {
        if remaining == 0 {
            f(&[]);
        }
        return;
    }
    if pos + 1 == buf.len() {
        buf[pos] = remaining as u16;
        f(buf);
        return;
    }
    for c in 0..=remaining {
        buf[pos] = c as u16;
        each_composition(buf, pos + 1, remaining - c, f);
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the union merged two components.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm_handle(n: u64) -> MonoidHandle {
        let g = FiniteAbelianGroup::new(&[n]).unwrap();
        let gamma = WeightSet::plus_minus(&g);
        MonoidHandle::new(g, gamma)
    }

    fn id_handle(n: u64) -> MonoidHandle {
        let g = FiniteAbelianGroup::new(&[n]).unwrap();
        let gamma = WeightSet::identity(&g);
        MonoidHandle::new(g, gamma)
    }

    fn seq(h: &MonoidHandle, text: &str) -> Sequence {
        Sequence::parse(h.group().clone(), text).unwrap()
    }

    #[test]
    fn atoms_of_c2_plus_minus() {
        let h = pm_handle(2);
        let atoms: Vec<String> = h.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(atoms, ["[(0)]", "[(1)^2]"]);
    }

    #[test]
    fn atoms_of_c3() {
        let h = pm_handle(3);
        let atoms: Vec<String> = h.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(
            atoms,
            [
                "[(0)]",
                "[(2)^2]",
                "[(1),(2)]",
                "[(1)^2]",
                "[(2)^3]",
                "[(1),(2)^2]",
                "[(1)^2,(2)]",
                "[(1)^3]"
            ]
        );

        let h = id_handle(3);
        let atoms: Vec<String> = h.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(atoms, ["[(0)]", "[(1),(2)]", "[(2)^3]", "[(1)^3]"]);
    }

    #[test]
    fn davenport_constants() {
        let h = pm_handle(3);
        assert_eq!(h.davenport_large(), 3);
        assert_eq!(h.davenport_small(), 1);

        let h = id_handle(5);
        assert_eq!(h.davenport_large(), 5);
        assert_eq!(h.davenport_small(), 4);

        // plus-minus over C2+C4: lower bound 1 + (2-1) + 4/2 = 4
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let h = MonoidHandle::new(g.clone(), WeightSet::plus_minus(&g));
        assert!(h.davenport_large() >= 4);
        assert!(1 + h.davenport_small() <= h.davenport_large());
    }

    #[test]
    fn classical_davenport_formula_rank_at_most_two() {
        // D(G) = 1 + sum(n_i - 1) for rank <= 2
        for factors in [&[3u64][..], &[4], &[2, 2], &[2, 4], &[3, 3]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let h = MonoidHandle::new(g.clone(), WeightSet::identity(&g));
            let formula: u32 = 1 + factors_sum_minus_one(g.invariant_factors());
            assert_eq!(h.davenport_large(), formula, "{g}");
        }
    }

    fn factors_sum_minus_one(fs: &[u64]) -> u32 {
        fs.iter().map(|&n| n as u32 - 1).sum()
    }

    #[test]
    fn factorizations_of_small_elements() {
        let h = pm_handle(3);
        let b = seq(&h, "[(1)^3,(2)^3]");
        let zs = h.factorizations(&b).unwrap();
        // g^3*(2g)^3, (g^2(2g))*(g(2g)^2), (g(2g))^3, g^2*(2g)^2*(g(2g))
        assert_eq!(zs.len(), 4);
        let mut lengths: Vec<u32> = zs.iter().map(Factorization::len).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, [2, 2, 3, 3]);

        let b = seq(&h, "[(0)^2]");
        let zs = h.factorizations(&b).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].len(), 2);

        let b = seq(&h, "[]");
        let zs = h.factorizations(&b).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(zs[0].is_empty());

        let not_member = seq(&h, "[(1)]");
        assert_eq!(
            h.factorizations(&not_member).unwrap_err(),
            Error::NotInMonoid
        );
    }

    #[test]
    fn factorizations_multiply_back() {
        let h = pm_handle(5);
        let b = seq(&h, "[(1)^5,(2)^2,(3)]");
        for z in h.factorizations(&b).unwrap() {
            let mut prod = Sequence::empty(h.group().clone());
            for &i in z.indices() {
                prod = prod.mul(&h.atoms()[i]).unwrap();
            }
            assert_eq!(prod, b);
        }
    }

    #[test]
    fn sets_of_lengths() {
        let h = pm_handle(3);
        let l = h.set_of_lengths(&seq(&h, "[(1)^3,(2)^3]")).unwrap();
        assert_eq!(l.into_iter().collect::<Vec<_>>(), [2, 3]);

        let h = pm_handle(5);
        let l = h.set_of_lengths(&seq(&h, "[(1)^5,(4)^5]")).unwrap();
        assert_eq!(l.into_iter().collect::<Vec<_>>(), [2, 5]);

        // g^8 * (2g) realizes {2, 4}
        let l = h.set_of_lengths(&seq(&h, "[(1)^8,(2)]")).unwrap();
        assert_eq!(l.into_iter().collect::<Vec<_>>(), [2, 4]);
    }

    #[test]
    fn distance_of_factorizations() {
        let h = pm_handle(3);
        let b = seq(&h, "[(1)^3,(2)^3]");
        let zs = h.factorizations(&b).unwrap();
        for z in &zs {
            assert_eq!(distance(z, z).unwrap(), 0);
        }
        // the {g^3, (2g)^3} and {g(2g)}^3 factorizations share no atom
        let z2 = zs.iter().find(|z| z.len() == 2).unwrap();
        let z3 = zs
            .iter()
            .find(|z| z.len() == 3 && z.indices().iter().all(|&i| i == z.indices()[0]))
            .unwrap();
        assert_eq!(distance(z2, z3).unwrap(), 3);

        let other = pm_handle(3);
        let zo = other.factorizations(&seq(&other, "[(0)]")).unwrap();
        assert_eq!(distance(&zs[0], &zo[0]).unwrap_err(), Error::HandleMismatch);
    }

    #[test]
    fn distance_is_a_metric_on_samples() {
        let h = pm_handle(5);
        let b = seq(&h, "[(1)^5,(2)^5]");
        let zs = h.factorizations(&b).unwrap();
        for a in &zs {
            for b2 in &zs {
                let d = distance(a, b2).unwrap();
                assert_eq!(d, distance(b2, a).unwrap());
                assert_eq!(d == 0, a == b2);
                for c in &zs {
                    assert!(d <= distance(a, c).unwrap() + distance(c, b2).unwrap());
                }
            }
        }
    }

    #[test]
    fn catenary_of_elements() {
        let h = pm_handle(3);
        assert_eq!(h.catenary_of_element(&seq(&h, "[(1)^3,(2)^3]")).unwrap(), 3);
        assert_eq!(h.catenary_of_element(&seq(&h, "[(0)^4]")).unwrap(), 0);
    }

    #[test]
    fn catenary_degree_certificates() {
        let h = pm_handle(3);
        assert_eq!(h.catenary_degree(9).unwrap(), (3, true));
        let h = pm_handle(2);
        assert_eq!(h.catenary_degree(8).unwrap(), (0, true));
    }

    #[test]
    fn omega_values() {
        let h = pm_handle(3);
        let zero = seq(&h, "[(0)]");
        assert_eq!(h.omega_of_atom(&zero, 5).unwrap(), (1, true));
        let u = seq(&h, "[(1)^3]");
        let (v, exact) = h.omega_of_atom(&u, 5).unwrap();
        assert_eq!(v, 3); // (g(2g))^3 is divisible by g^3, no proper subproduct is
        assert!(exact);
        assert_eq!(h.omega_monoid(5).unwrap(), (3, true));
        assert_eq!(
            h.omega_of_atom(&seq(&h, "[(0)^2]"), 3).unwrap_err(),
            Error::NotAnAtom
        );
    }

    #[test]
    fn delta_sets() {
        assert_eq!(
            pm_handle(3).delta_set(9).into_iter().collect::<Vec<_>>(),
            [1]
        );
        assert!(pm_handle(2).delta_set(8).is_empty());
    }

    #[test]
    fn unions_and_rho_lambda() {
        let h = pm_handle(3);
        let (u2, exact) = h.unions_uk(2, 6);
        assert_eq!(u2.into_iter().collect::<Vec<_>>(), [2, 3]);
        assert!(exact);
        assert_eq!(h.rho_k(3, 9).unwrap(), (4, true));
        let h = pm_handle(5);
        assert_eq!(h.rho_k(2, 10).unwrap(), (5, true));
    }

    #[test]
    fn unions_match_prediction_for_c3() {
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let h = pm_handle(3);
        for k in 2..=6 {
            let (lo, hi) = theorem62_prediction(&g, k).unwrap();
            let (set, exact) = h.unions_uk(k, k * 3);
            assert!(exact);
            let expect: BTreeSet<u32> = (lo..=hi).collect();
            assert_eq!(set, expect, "k = {k}");
        }
    }

    #[test]
    fn prediction_cases() {
        let c3 = FiniteAbelianGroup::new(&[3]).unwrap();
        assert_eq!(theorem62_prediction(&c3, 2).unwrap(), (2, 3));
        assert_eq!(theorem62_prediction(&c3, 3).unwrap(), (2, 4));
        let c5 = FiniteAbelianGroup::new(&[5]).unwrap();
        assert_eq!(theorem62_prediction(&c5, 6).unwrap(), (3, 15));
        let c4 = FiniteAbelianGroup::new(&[4]).unwrap();
        assert!(theorem62_prediction(&c4, 2).is_err());
        assert!(theorem62_prediction(&c3, 1).is_err());
    }

    #[test]
    fn lemma63_witnesses() {
        let (b, l) = lemma63_witness(5, 3).unwrap();
        assert_eq!(b.to_string(), "[(1)^7,(3)]");
        assert_eq!(l.into_iter().collect::<Vec<_>>(), [2, 3]);

        // j = n degenerates to g^(2n)
        let (b, l) = lemma63_witness(5, 5).unwrap();
        assert_eq!(b.to_string(), "[(1)^10]");
        assert_eq!(l.into_iter().collect::<Vec<_>>(), [2, 5]);

        assert!(lemma63_witness(4, 3).is_err());
        assert!(lemma63_witness(5, 2).is_err());
        assert!(lemma63_witness(5, 6).is_err());
    }

    #[test]
    fn classical_atoms_embed_into_plus_minus_atoms_for_odd_order() {
        for factors in [&[3u64][..], &[5], &[3, 3]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let id = MonoidHandle::new(g.clone(), WeightSet::identity(&g));
            let pm = MonoidHandle::new(g.clone(), WeightSet::plus_minus(&g));
            for atom in id.atoms() {
                assert!(
                    pm.atom_index(atom).is_some(),
                    "{atom} should stay an atom in the plus-minus monoid over {g}"
                );
            }
        }
    }

    #[test]
    fn restricted_support() {
        let g = FiniteAbelianGroup::new(&[5]).unwrap();
        let one = g.from_coords(&[1]).unwrap();
        let h = MonoidHandle::with_support(g.clone(), vec![one], WeightSet::plus_minus(&g))
            .unwrap();
        // over support {g}: g^2 = g * (-g) and g^5 are the atoms
        let atoms: Vec<String> = h.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(atoms, ["[(1)^2]", "[(1)^5]"]);
        assert!(!h.is_member(&Sequence::parse(g, "[(2)^5]").unwrap()));
    }
}
