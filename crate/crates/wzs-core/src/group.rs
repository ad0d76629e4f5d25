//! Finite abelian groups in invariant-factor presentation, their elements,
//! dense subsets, endomorphisms, and weight sets.
//!
//! A group is always presented by its canonical divisor chain
//! `n_1 | n_2 | ... | n_r`. Elements are residue tuples, but every element
//! also carries a dense mixed-radix index so that subsets of `G` fit into a
//! single `u64` bitmask. Sumset folding over these bitmasks is the hot path
//! of everything downstream.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

/// Hard representation limit: subsets of `G` are `u64` bitmasks.
pub const HARD_ORDER_LIMIT: u64 = 64;

/// Default order cap for group construction.
pub const DEFAULT_ORDER_CAP: u64 = 64;

/// An element of a [`FiniteAbelianGroup`], stored as its dense index.
///
/// Indices are only meaningful relative to the group that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u16);

/// A subset of the element set of a group, as a bitmask over dense indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GSubset(pub u64);

impl GSubset {
    pub const EMPTY: GSubset = GSubset(0);

    pub fn singleton(e: Elem) -> Self {
        GSubset(1u64 << e.0)
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0 >> e.0 & 1 == 1
    }

    pub fn insert(&mut self, e: Elem) {
        self.0 |= 1u64 << e.0;
    }

    pub fn union(self, other: GSubset) -> GSubset {
        GSubset(self.0 | other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Elem> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as u16;
                bits &= bits - 1;
                Some(Elem(i))
            }
        })
    }
}

/// A finite abelian group `C_{n_1} ⊕ ... ⊕ C_{n_r}` with `n_1 | ... | n_r`.
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: usize,
    exponent: u64,
    coords: Vec<Vec<u64>>,
    add: Vec<u16>,
    neg: Vec<u16>,
    orders: Vec<u64>,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup{:?}", self.factors)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("C{n}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Normalizes an arbitrary list of cyclic orders into the canonical divisor
/// chain of the direct sum, via the elementary-divisor decomposition.
fn divisor_chain(factors: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    // prime -> exponents, one entry per cyclic factor containing that prime
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in factors {
        let mut n = n;
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                primary.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if n > 1 {
            primary.entry(n).or_default().push(1);
        }
    }
    let rank = primary.values().map(Vec::len).max().unwrap_or(0);
    for exps in primary.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    // invariant factors from largest to smallest, then reversed into a chain
    let mut chain: Vec<u64> = (0..rank)
        .map(|k| {
            primary
                .iter()
                .map(|(&p, exps)| exps.get(k).map_or(1, |&e| p.pow(e)))
                .product()
        })
        .collect();
    chain.reverse();
    chain
}

impl FiniteAbelianGroup {
    /// Builds the group with the canonical divisor chain of the given cyclic
    /// orders, under the default order cap.
    pub fn new(factors: &[u64]) -> Result<Arc<Self>> {
        Self::with_cap(factors, DEFAULT_ORDER_CAP)
    }

    /// Builds the group under an explicit order cap (at most 64, the bitmask
    /// representation limit).
    pub fn with_cap(factors: &[u64], cap: u64) -> Result<Arc<Self>> {
        for &n in factors {
            if n < 2 {
                return Err(Error::InvalidFactor(n));
            }
        }
        let cap = cap.min(HARD_ORDER_LIMIT);
        let order: u128 = factors.iter().map(|&n| n as u128).product();
        if order > cap as u128 {
            return Err(Error::OrderCapExceeded { order, cap });
        }
        let factors = divisor_chain(factors);
        let order = factors.iter().product::<u64>() as usize;
        let exponent = factors.last().copied().unwrap_or(1);
        let rank = factors.len();

        let mut coords = Vec::with_capacity(order);
        let mut cur = vec![0u64; rank];
        for _ in 0..order {
            coords.push(cur.clone());
            for i in 0..rank {
                cur[i] += 1;
                if cur[i] < factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        let index_of = |c: &[u64]| -> u16 {
            let mut idx = 0u64;
            let mut stride = 1u64;
            for i in 0..rank {
                idx += c[i] * stride;
                stride *= factors[i];
            }
            idx as u16
        };
        let mut add = vec![0u16; order * order];
        let mut neg = vec![0u16; order];
        let mut orders = vec![1u64; order];
        let mut tmp = vec![0u64; rank];
        for a in 0..order {
            for b in 0..order {
                for i in 0..rank {
                    tmp[i] = (coords[a][i] + coords[b][i]) % factors[i];
                }
                add[a * order + b] = index_of(&tmp);
            }
            for i in 0..rank {
                tmp[i] = (factors[i] - coords[a][i]) % factors[i];
            }
            neg[a] = index_of(&tmp);
            orders[a] = coords[a]
                .iter()
                .zip(&factors)
                .map(|(&c, &n)| n / gcd(c, n))
                .fold(1, lcm);
        }
        Ok(Arc::new(FiniteAbelianGroup {
            factors,
            order,
            exponent,
            coords,
            add,
            neg,
            orders,
        }))
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    /// The canonical basis element `e_i` (0-based).
    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut c = vec![0i64; self.rank()];
        c[i] = 1;
        self.from_coords(&c).expect("basis index in range")
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as u16).map(Elem)
    }

    /// All elements as a subset mask.
    pub fn full_set(&self) -> GSubset {
        if self.order == 64 {
            GSubset(u64::MAX)
        } else {
            GSubset((1u64 << self.order) - 1)
        }
    }

    /// Nonzero elements.
    pub fn nonzero_set(&self) -> GSubset {
        GSubset(self.full_set().0 & !1)
    }

    pub fn coords(&self, e: Elem) -> &[u64] {
        &self.coords[e.0 as usize]
    }

    /// Element from coordinates, reduced modulo the invariant factors.
    pub fn from_coords(&self, c: &[i64]) -> Result<Elem> {
        if c.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        let mut idx = 0u64;
        let mut stride = 1u64;
        for i in 0..self.rank() {
            let n = self.factors[i] as i64;
            let r = c[i].rem_euclid(n) as u64;
            idx += r * stride;
            stride *= self.factors[i];
        }
        Ok(Elem(idx as u16))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.0 as usize * self.order + b.0 as usize])
    }

    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    pub fn scale(&self, k: i64, a: Elem) -> Elem {
        let ord = self.orders[a.0 as usize] as i64;
        let mut k = k.rem_euclid(ord) as u64;
        let mut acc = Elem(0);
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: Elem) -> u64 {
        self.orders[a.0 as usize]
    }

    pub fn same_group(&self, other: &FiniteAbelianGroup) -> bool {
        self.factors == other.factors
    }

    /// Minkowski sum of two subsets.
    pub fn sumset(&self, a: GSubset, b: GSubset) -> GSubset {
        let mut out = 0u64;
        let mut x = a.0;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            let row = &self.add[i * self.order..(i + 1) * self.order];
            let mut y = b.0;
            while y != 0 {
                let j = y.trailing_zeros() as usize;
                y &= y - 1;
                out |= 1u64 << row[j];
            }
        }
        GSubset(out)
    }

    /// The subset `2G = {2g : g in G}`.
    pub fn two_g(&self) -> GSubset {
        let mut s = GSubset::EMPTY;
        for e in self.elements() {
            s.insert(self.add(e, e));
        }
        s
    }

    /// Closure of a generating set under addition and negation.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> GSubset {
        let mut s = GSubset::singleton(self.zero());
        loop {
            let mut next = s;
            for &g in gens {
                next = next.union(self.sumset(s, GSubset::singleton(g)));
            }
            for e in s.iter() {
                next.insert(self.neg(e));
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// True when a subset mask is a subgroup of `G`.
    pub fn is_subgroup(&self, s: GSubset) -> bool {
        if !s.contains(self.zero()) {
            return false;
        }
        self.sumset(s, s) == s
    }

    pub fn is_elementary_2(&self) -> bool {
        self.exponent <= 2
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// An endomorphism of a group, determined by the images of the canonical
/// basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    basis_images: Vec<Elem>,
    table: Vec<u16>,
}

impl Endomorphism {
    /// Checks well-definedness (`n_i * image_i = 0`) and precomputes the
    /// application table by linearity.
    pub fn new(group: &FiniteAbelianGroup, basis_images: Vec<Elem>) -> Result<Self> {
        if basis_images.len() != group.rank() {
            return Err(Error::IllFormedEndomorphism);
        }
        for (i, &img) in basis_images.iter().enumerate() {
            if group.scale(group.invariant_factors()[i] as i64, img) != group.zero() {
                return Err(Error::IllFormedEndomorphism);
            }
        }
        let table = (0..group.order() as u16)
            .map(|e| {
                let c = group.coords(Elem(e)).to_vec();
                let mut acc = group.zero();
                for (i, &a) in c.iter().enumerate() {
                    acc = group.add(acc, group.scale(a as i64, basis_images[i]));
                }
                acc.0
            })
            .collect();
        Ok(Endomorphism {
            basis_images,
            table,
        })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let imgs = (0..group.rank()).map(|i| group.basis_elem(i)).collect();
        Endomorphism::new(group, imgs).expect("identity is well defined")
    }

    pub fn negation(group: &FiniteAbelianGroup) -> Self {
        let imgs = (0..group.rank())
            .map(|i| group.neg(group.basis_elem(i)))
            .collect();
        Endomorphism::new(group, imgs).expect("negation is well defined")
    }

    pub fn apply(&self, e: Elem) -> Elem {
        Elem(self.table[e.0 as usize])
    }

    pub fn basis_images(&self) -> &[Elem] {
        &self.basis_images
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = 0u64;
        for &t in &self.table {
            seen |= 1u64 << t;
        }
        seen.count_ones() as usize == self.table.len()
    }

    fn compose(&self, group: &FiniteAbelianGroup, inner: &Endomorphism) -> Endomorphism {
        let imgs = inner
            .basis_images
            .iter()
            .map(|&e| self.apply(e))
            .collect();
        Endomorphism::new(group, imgs).expect("composition is well defined")
    }
}

/// Tag for the preset weight sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Id,
    PlusMinus,
    FullAut,
    Custom,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::Id => write!(f, "id"),
            WeightKind::PlusMinus => write!(f, "pm"),
            WeightKind::FullAut => write!(f, "aut"),
            WeightKind::Custom => write!(f, "custom"),
        }
    }
}

/// A nonempty finite set of endomorphisms used as weights.
///
/// Construction deduplicates, fixes a canonical order, and precomputes the
/// orbit `{γ(g) : γ}` of every element as a bitmask.
#[derive(Debug, Clone)]
pub struct WeightSet {
    kind: WeightKind,
    endos: Vec<Endomorphism>,
    is_group: bool,
    orbits: Vec<u64>,
}

impl WeightSet {
    fn build(group: &FiniteAbelianGroup, mut endos: Vec<Endomorphism>, kind: WeightKind) -> Result<Self> {
        if endos.is_empty() {
            return Err(Error::EmptyWeightSet);
        }
        endos.sort_by(|a, b| a.table.cmp(&b.table));
        endos.dedup_by(|a, b| a.table == b.table);
        let bijective = endos.iter().all(Endomorphism::is_bijective);
        // the full automorphism group is closed by construction; otherwise
        // check closure against the sorted table list
        let closed = bijective
            && (kind == WeightKind::FullAut
                || endos.iter().all(|f| {
                    endos.iter().all(|g| {
                        let table = f.compose(group, g).table;
                        endos.binary_search_by(|h| h.table.cmp(&table)).is_ok()
                    })
                }));
        let orbits = (0..group.order() as u16)
            .map(|e| {
                let mut mask = 0u64;
                for endo in &endos {
                    mask |= 1u64 << endo.apply(Elem(e)).0;
                }
                mask
            })
            .collect();
        Ok(WeightSet {
            kind,
            endos,
            is_group: closed,
            orbits,
        })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Self::build(group, vec![Endomorphism::identity(group)], WeightKind::Id)
            .expect("identity weight set")
    }

    /// `{id, -id}`; the two coincide on elementary 2-groups.
    pub fn plus_minus(group: &FiniteAbelianGroup) -> Self {
        Self::build(
            group,
            vec![Endomorphism::identity(group), Endomorphism::negation(group)],
            WeightKind::PlusMinus,
        )
        .expect("plus-minus weight set")
    }

    /// The full automorphism group, enumerated over candidate basis images
    /// and pruned by injectivity of the partial homomorphism.
    pub fn full_aut(group: &FiniteAbelianGroup) -> Result<Self> {
        let auts = enumerate_automorphisms(group)?;
        Self::build(group, auts, WeightKind::FullAut)
    }

    pub fn custom(group: &FiniteAbelianGroup, endos: Vec<Endomorphism>) -> Result<Self> {
        Self::build(group, endos, WeightKind::Custom)
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn endos(&self) -> &[Endomorphism] {
        &self.endos
    }

    pub fn len(&self) -> usize {
        self.endos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endos.is_empty()
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    /// `{γ(g) : γ ∈ Γ}` as a bitmask.
    pub fn orbit(&self, e: Elem) -> GSubset {
        GSubset(self.orbits[e.0 as usize])
    }

    /// True when both `id` and `-id` belong to the set.
    pub fn contains_pm(&self, group: &FiniteAbelianGroup) -> bool {
        let id = Endomorphism::identity(group);
        let neg = Endomorphism::negation(group);
        self.endos.iter().any(|e| e.table == id.table)
            && self.endos.iter().any(|e| e.table == neg.table)
    }

    /// Set equality with `{id, -id}`.
    pub fn is_exactly_pm(&self, group: &FiniteAbelianGroup) -> bool {
        self.contains_pm(group) && self.len() == WeightSet::plus_minus(group).len()
    }

    /// True when every member is an automorphism.
    pub fn all_automorphisms(&self) -> bool {
        self.endos.iter().all(Endomorphism::is_bijective)
    }
}

/// Enumerates `Aut(G)` by choosing basis images with matching orders and
/// pruning branches whose partial homomorphism is not injective.
pub fn enumerate_automorphisms(group: &FiniteAbelianGroup) -> Result<Vec<Endomorphism>> {
    let r = group.rank();
    if r == 0 {
        return Ok(vec![Endomorphism::identity(group)]);
    }
    let factors = group.invariant_factors().to_vec();
    let mut out = Vec::new();
    let mut images: Vec<Elem> = Vec::with_capacity(r);
    fn rec(
        group: &FiniteAbelianGroup,
        factors: &[u64],
        images: &mut Vec<Elem>,
        out: &mut Vec<Endomorphism>,
    ) {
        let i = images.len();
        if i == factors.len() {
            out.push(Endomorphism::new(group, images.clone()).expect("orders checked"));
            return;
        }
        let domain_size: u64 = factors[..=i].iter().product();
        for cand in group.elements() {
            if factors[i] % group.order_of(cand) != 0 {
                continue;
            }
            images.push(cand);
            if group.subgroup_generated(images).len() as u64 == domain_size {
                rec(group, factors, images, out);
            }
            images.pop();
        }
    }
    rec(group, &factors, &mut images, &mut out);
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_normalizes_presentation() {
        let g = FiniteAbelianGroup::new(&[4, 2]).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 4]);
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        let h = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        assert!(g.same_group(&h));
        // C2 + C3 = C6
        let g = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        assert_eq!(g.invariant_factors(), &[6]);
        // C6 + C4 = C2 + C12
        let g = FiniteAbelianGroup::new(&[6, 4]).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 12]);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteAbelianGroup::new(&[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert_eq!(g.rank(), 0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FiniteAbelianGroup::new(&[1]).unwrap_err(),
            Error::InvalidFactor(1)
        );
        assert!(matches!(
            FiniteAbelianGroup::new(&[8, 16]).unwrap_err(),
            Error::OrderCapExceeded { .. }
        ));
    }

    #[test]
    fn element_arithmetic() {
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let a = g.from_coords(&[1]).unwrap();
        let b = g.from_coords(&[2]).unwrap();
        assert_eq!(g.add(a, b), g.zero());

        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let a = g.from_coords(&[1]).unwrap();
        assert_eq!(g.scale(-1, a), g.from_coords(&[3]).unwrap());

        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let a = g.from_coords(&[1, 2]).unwrap();
        let b = g.from_coords(&[1, 3]).unwrap();
        assert_eq!(g.add(a, b), g.from_coords(&[0, 1]).unwrap());
    }

    #[test]
    fn element_orders() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        assert_eq!(g.order_of(g.zero()), 1);
        assert_eq!(g.order_of(g.from_coords(&[2]).unwrap()), 2);
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.order_of(g.from_coords(&[1, 2]).unwrap()), 2);
    }

    #[test]
    fn two_g_and_subgroups() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let two = g.two_g();
        assert_eq!(two.len(), 2);
        assert!(two.contains(g.zero()));
        assert!(two.contains(g.from_coords(&[2]).unwrap()));

        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let two = g.two_g();
        let expect: Vec<Elem> = vec![
            g.from_coords(&[0, 0]).unwrap(),
            g.from_coords(&[0, 2]).unwrap(),
        ];
        assert_eq!(two.iter().collect::<Vec<_>>(), expect);

        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let s = g.subgroup_generated(&[g.from_coords(&[1]).unwrap()]);
        assert_eq!(s, g.full_set());
    }

    #[test]
    fn subgroup_generated_idempotent_and_monotone() {
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let a = g.from_coords(&[1, 2]).unwrap();
        let b = g.from_coords(&[0, 1]).unwrap();
        let s1 = g.subgroup_generated(&[a]);
        let s1_again = g.subgroup_generated(&s1.iter().collect::<Vec<_>>());
        assert_eq!(s1, s1_again);
        let s2 = g.subgroup_generated(&[a, b]);
        assert_eq!(s1.0 & s2.0, s1.0);
    }

    #[test]
    fn automorphism_counts_for_cyclic_groups() {
        // |Aut(C_n)| = phi(n)
        fn phi(n: u64) -> usize {
            (1..=n).filter(|&k| gcd(k, n) == 1).count()
        }
        for n in 2..=12u64 {
            let g = FiniteAbelianGroup::new(&[n]).unwrap();
            let auts = enumerate_automorphisms(&g).unwrap();
            assert_eq!(auts.len(), phi(n), "Aut(C_{n})");
        }
    }

    #[test]
    fn automorphism_group_of_c2c4() {
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        let ws = WeightSet::full_aut(&g).unwrap();
        assert_eq!(ws.len(), 8);
        assert!(ws.is_group());
        // every member is additive and bijective
        for endo in ws.endos() {
            assert!(endo.is_bijective());
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(
                        endo.apply(g.add(a, b)),
                        g.add(endo.apply(a), endo.apply(b))
                    );
                }
            }
        }
    }

    #[test]
    fn plus_minus_collapses_on_elementary_2_groups() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let ws = WeightSet::plus_minus(&g);
        assert_eq!(ws.len(), 1);
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let ws = WeightSet::plus_minus(&g);
        assert_eq!(ws.len(), 2);
        assert!(ws.is_group());
        let aut = WeightSet::full_aut(&g).unwrap();
        assert_eq!(aut.len(), 2); // Aut(C3) = {id, -id}
    }

    #[test]
    fn sumset_folding() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let a = GSubset::singleton(g.from_coords(&[1]).unwrap());
        let b = GSubset::singleton(g.from_coords(&[3]).unwrap());
        let s = g.sumset(a.union(b), a.union(b));
        // {1,3} + {1,3} = {2, 0}
        assert_eq!(s.len(), 2);
        assert!(s.contains(g.zero()));
        assert!(s.contains(g.from_coords(&[2]).unwrap()));
    }
}
