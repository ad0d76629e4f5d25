//! Positive definite binary quadratic forms: Gauss reduction, Dirichlet
//! composition, the form class group with an explicit isomorphism to an
//! abstract finite abelian group, prime splitting via the Kronecker symbol,
//! the transfer map into the plus-minus weighted zero-sum monoid, and
//! representation testing for the principal class.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::group::{Elem, FiniteAbelianGroup, WeightSet};
use crate::monoid::LengthSet;
use crate::sequence::Sequence;
use crate::Result;

/// A negative discriminant together with its fundamental part and conductor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discriminant {
    pub value: i64,
    pub fundamental: i64,
    pub conductor: i64,
}

fn is_squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

fn is_fundamental(d: i64) -> bool {
    if d.rem_euclid(4) == 1 {
        is_squarefree(d)
    } else if d % 4 == 0 {
        let q = d / 4;
        let r = q.rem_euclid(4);
        (r == 2 || r == 3) && is_squarefree(q)
    } else {
        false
    }
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        if value >= 0 || value.rem_euclid(4) > 1 {
            return Err(Error::BadDiscriminant(value));
        }
        let mut m = 1i64;
        while (m + 1) * (m + 1) <= -value {
            m += 1;
        }
        // largest m with m^2 | value and value / m^2 a fundamental discriminant
        while m >= 1 {
            if value % (m * m) == 0 && is_fundamental(value / (m * m)) {
                return Ok(Discriminant {
                    value,
                    fundamental: value / (m * m),
                    conductor: m,
                });
            }
            m -= 1;
        }
        Err(Error::BadDiscriminant(value))
    }
}

/// A primitive positive definite integral binary quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl QForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = QForm { a, b, c };
        if gcd(gcd(a, b), c) != 1 {
            return Err(Error::NotPrimitive);
        }
        if a <= 0 || f.discriminant() >= 0 {
            return Err(Error::WrongSign);
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() < a && a < c))
    }
}

impl std::fmt::Display for QForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Gauss reduction: alternately normalize `b` into `(-a, a]` and flip
/// `(a,b,c) -> (c,-b,a)` while `a > c`, then fix the boundary sign.
pub fn reduce(f: &QForm) -> QForm {
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    loop {
        // normalize: b into (-a, a]
        if b > a || b <= -a {
            let r = (b + a).rem_euclid(2 * a) - a; // in (-a, a]... shifted below
            let k = (b - r) / (2 * a);
            b -= 2 * a * k;
            c = (b * b - f.discriminant()) / (4 * a);
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        break;
    }
    if (b < 0) && (b == -a || a == c) {
        b = -b;
    }
    QForm { a, b, c }
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All reduced primitive forms of the discriminant, sorted by (a, b, c).
pub fn enumerate_reduced(d: &Discriminant) -> Vec<QForm> {
    let delta = d.value;
    let mut out = Vec::new();
    let b_bound = isqrt(-delta / 3);
    for b in 0..=b_bound {
        if (b - delta).rem_euclid(2) != 0 {
            continue;
        }
        let n = (b * b - delta) / 4; // = a * c
        let mut a = if b > 0 { b } else { 1 };
        while a * a <= n {
            if a >= 1 && n % a == 0 {
                let c = n / a;
                if gcd(gcd(a, b), c) == 1 {
                    out.push(QForm { a, b, c });
                    if b > 0 && b < a && a < c {
                        out.push(QForm { a, b: -b, c });
                    }
                }
            }
            a += 1;
        }
    }
    out.sort();
    out
}

/// Dirichlet composition via united forms: with `g = gcd(a1, a2, (b1+b2)/2)`
/// the composite has leading coefficient `A = a1 a2 / g^2`, and the middle
/// coefficient `B` is the solution of `B = b1 (mod 2 a1/g)`,
/// `B = b2 (mod 2 a2/g)`, `B^2 = delta (mod 4A)`, found by scanning the
/// first congruence class (at most `a2/g` candidates).
pub fn compose(f1: &QForm, f2: &QForm) -> Result<QForm> {
    if f1.discriminant() != f2.discriminant() {
        return Err(Error::DiscriminantMismatch);
    }
    let delta = f1.discriminant();
    let beta = (f1.b + f2.b) / 2;
    let g = gcd(gcd(f1.a, f2.a), beta);
    let a3 = f1.a / g * (f2.a / g);
    let m = 2 * a3;
    let step = 2 * f1.a / g;
    let other = 2 * f2.a / g;
    let mut t = 0;
    let b3 = loop {
        if t * step >= m {
            return Err(Error::CompositionInconsistent(format!(
                "{f1} * {f2}: no concordant middle coefficient"
            )));
        }
        let cand = (f1.b + t * step).rem_euclid(m);
        if (cand - f2.b).rem_euclid(other) == 0 && (cand * cand - delta).rem_euclid(2 * m) == 0 {
            break cand;
        }
        t += 1;
    };
    let c3 = (b3 * b3 - delta) / (4 * a3);
    Ok(reduce(&QForm {
        a: a3,
        b: b3,
        c: c3,
    }))
}

/// The form class group with its composition table and an explicit
/// isomorphism onto an abstract finite abelian group.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    pub disc: Discriminant,
    /// Reduced class representatives, sorted by (a, b, c).
    pub forms: Vec<QForm>,
    pub h: usize,
    pub table: Vec<Vec<usize>>,
    pub principal: usize,
    /// `neg[i]` is the class of `(a, -b, c)`, the inverse of class `i`.
    pub neg: Vec<usize>,
    /// Abstract group isomorphic to the class group.
    pub group: Arc<FiniteAbelianGroup>,
    /// `iso[i]` is the abstract element corresponding to `forms[i]`.
    pub iso: Vec<Elem>,
}

fn idx_order(table: &[Vec<usize>], principal: usize, i: usize) -> usize {
    let mut x = i;
    let mut k = 1;
    while x != principal {
        x = table[x][i];
        k += 1;
    }
    k
}

/// All sorted divisor chains `n_1 | n_2 | ... | n_r` of product `h` whose
/// last entry equals `exponent`.
fn divisor_chains(h: usize, exponent: usize) -> Vec<Vec<u64>> {
    fn go(rem: usize, max_part: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            out.push(acc.clone());
            return;
        }
        // parts are emitted largest-first, each dividing the previous
        let prev = acc.last().copied().unwrap_or(max_part as u64) as usize;
        for part in (2..=prev.min(rem)).rev() {
            if rem % part == 0 && prev % part == 0 {
                acc.push(part as u64);
                go(rem / part, max_part, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if h == 1 {
        out.push(Vec::new());
        return out;
    }
    if h % exponent == 0 {
        let mut acc = vec![exponent as u64];
        go(h / exponent, exponent, &mut acc, &mut out);
    }
    for chain in &mut out {
        chain.reverse();
    }
    out
}

impl FormClassGroup {
    pub fn new(disc: Discriminant) -> Result<Self> {
        let forms = enumerate_reduced(&disc);
        let h = forms.len();
        let index_of = |f: &QForm| -> Result<usize> {
            forms
                .iter()
                .position(|g| g == f)
                .ok_or_else(|| Error::CompositionInconsistent(format!("{f} not reduced")))
        };
        let s = disc.value.rem_euclid(2);
        let principal_form = QForm {
            a: 1,
            b: s,
            c: (s * s - disc.value) / 4,
        };
        let principal = index_of(&principal_form)?;
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in 0..h {
                table[i][j] = index_of(&compose(&forms[i], &forms[j])?)?;
            }
        }
        let neg: Vec<usize> = forms
            .iter()
            .map(|f| {
                index_of(&reduce(&QForm {
                    a: f.a,
                    b: -f.b,
                    c: f.c,
                }))
            })
            .collect::<Result<_>>()?;
        // group axioms
        for i in 0..h {
            if table[principal][i] != i || table[i][neg[i]] != principal {
                return Err(Error::CompositionInconsistent(
                    "identity or inverse law fails".into(),
                ));
            }
            for j in 0..h {
                if table[i][j] != table[j][i] {
                    return Err(Error::CompositionInconsistent("not commutative".into()));
                }
            }
        }
        let orders: Vec<usize> = (0..h).map(|i| idx_order(&table, principal, i)).collect();
        let exponent = orders.iter().copied().max().unwrap_or(1);
        let (group, iso) = Self::build_iso(h, &table, principal, &orders, exponent)?;
        Ok(FormClassGroup {
            disc,
            forms,
            h,
            table,
            principal,
            neg,
            group,
            iso,
        })
    }

    /// Finds the divisor-chain structure and an explicit generator-based
    /// isomorphism by searching tuples of classes with the invariant-factor
    /// orders whose span enumerates the group without collision.
    fn build_iso(
        h: usize,
        table: &[Vec<usize>],
        principal: usize,
        orders: &[usize],
        exponent: usize,
    ) -> Result<(Arc<FiniteAbelianGroup>, Vec<Elem>)> {
        for chain in divisor_chains(h, exponent) {
            let group = FiniteAbelianGroup::new(&chain)?;
            let factors = group.invariant_factors().to_vec();
            let r = factors.len();
            // DFS over generator tuples with the prescribed orders
            let mut gens = vec![0usize; r];
            if Self::search_gens(table, principal, orders, &factors, 0, &mut gens) {
                let mut iso = vec![Elem(0); h];
                let mut seen = vec![false; h];
                let mut ok = true;
                for idx in 0..group.order() {
                    let coords = group.coords(Elem(idx as u16)).to_vec();
                    let mut cls = principal;
                    for (i, &k) in coords.iter().enumerate() {
                        for _ in 0..k {
                            cls = table[cls][gens[i]];
                        }
                    }
                    if seen[cls] {
                        ok = false;
                        break;
                    }
                    seen[cls] = true;
                    iso[cls] = Elem(idx as u16);
                }
                if ok {
                    return Ok((group, iso));
                }
            }
        }
        Err(Error::CompositionInconsistent(
            "no abelian structure matches the composition table".into(),
        ))
    }

    fn search_gens(
        table: &[Vec<usize>],
        principal: usize,
        orders: &[usize],
        factors: &[u64],
        pos: usize,
        gens: &mut Vec<usize>,
    ) -> bool {
        if pos == factors.len() {
            // verify the span is collision-free
            let total: u64 = factors.iter().product();
            let mut seen = vec![false; table.len()];
            let mut count = 0u64;
            // enumerate all coordinate tuples with an odometer
            let mut coords = vec![0u64; factors.len()];
            loop {
                let mut cls = principal;
                for (i, &k) in coords.iter().enumerate() {
                    for _ in 0..k {
                        cls = table[cls][gens[i]];
                    }
                }
                if seen[cls] {
                    return false;
                }
                seen[cls] = true;
                count += 1;
                // odometer
                let mut i = 0;
                loop {
                    if i == factors.len() {
                        return count == total;
                    }
                    coords[i] += 1;
                    if coords[i] < factors[i] {
                        break;
                    }
                    coords[i] = 0;
                    i += 1;
                }
            }
        }
        for g in 0..table.len() {
            if orders[g] as u64 == factors[pos] {
                gens[pos] = g;
                if Self::search_gens(table, principal, orders, factors, pos + 1, gens) {
                    return true;
                }
            }
        }
        false
    }

    pub fn index_of(&self, f: &QForm) -> Option<usize> {
        self.forms.iter().position(|g| g == f)
    }

    /// Class index of an arbitrary primitive form of this discriminant.
    pub fn class_of_form(&self, f: &QForm) -> Result<usize> {
        if f.discriminant() != self.disc.value {
            return Err(Error::DiscriminantMismatch);
        }
        self.index_of(&reduce(f))
            .ok_or_else(|| Error::CompositionInconsistent(format!("{f} missing")))
    }

    pub fn compose_idx(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// True when the class index is its own inverse (ambiguous class).
    pub fn is_ambiguous(&self, i: usize) -> bool {
        self.neg[i] == i
    }
}

/// Kronecker symbol (delta / p) for a prime p.
pub fn kronecker(delta: i64, p: i64) -> i64 {
    if p == 2 {
        if delta % 2 == 0 {
            0
        } else {
            match delta.rem_euclid(8) {
                1 | 7 => 1,
                _ => -1,
            }
        }
    } else {
        let a = delta.rem_euclid(p) as u64;
        if a == 0 {
            return 0;
        }
        // Euler's criterion
        let mut base = a % p as u64;
        let mut e = (p as u64 - 1) / 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }
}

/// Splitting data of a prime in the order of the discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeData {
    pub p: i64,
    pub kronecker: i64,
    pub f_p: u32,
    /// Class indices of the pair {F_p, -F_p} representing p (inertia
    /// degree 1 only); the two entries coincide for ambiguous classes.
    pub pair: Option<(usize, usize)>,
}

/// Class indices of the reduced classes representing `n > 0`.
pub fn classes_representing(cg: &FormClassGroup, n: i64) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, f) in cg.forms.iter().enumerate() {
        // f(x,y) >= |delta| y^2 / (4a), so |y| <= sqrt(4 a n / |delta|)
        let y_bound = isqrt(4 * f.a * n / -cg.disc.value) + 1;
        'search: for y in -y_bound..=y_bound {
            // a x^2 + (b y) x + (c y^2 - n) = 0
            let dq = f.b * f.b * y * y - 4 * f.a * (f.c * y * y - n);
            if dq < 0 {
                continue;
            }
            let r = isqrt(dq);
            if r * r != dq {
                continue;
            }
            for root in [(-f.b * y + r), (-f.b * y - r)] {
                if root % (2 * f.a) == 0 {
                    out.push(i);
                    break 'search;
                }
            }
        }
    }
    out
}

/// Kronecker value, inertia degree, and the representing class pair of a
/// prime not dividing the conductor.
pub fn prime_data(cg: &FormClassGroup, p: i64) -> Result<PrimeData> {
    if cg.disc.conductor % p == 0 {
        return Err(Error::PrimeDividesConductor(p));
    }
    let k = kronecker(cg.disc.value, p);
    if k == -1 {
        // inert: p^2 must be principal
        let reps = classes_representing(cg, p * p);
        if !reps.contains(&cg.principal) {
            return Err(Error::CompositionInconsistent(format!(
                "inert prime {p}: p^2 not represented by the principal class"
            )));
        }
        return Ok(PrimeData {
            p,
            kronecker: k,
            f_p: 2,
            pair: None,
        });
    }
    let reps = classes_representing(cg, p);
    let (i, j) = match reps.as_slice() {
        [i] => (*i, *i),
        [i, j] => (*i, *j),
        _ => {
            return Err(Error::CompositionInconsistent(format!(
                "prime {p} represented by {} classes",
                reps.len()
            )))
        }
    };
    if cg.neg[i] != j {
        return Err(Error::CompositionInconsistent(format!(
            "classes representing {p} are not an inverse pair"
        )));
    }
    if k == 0 && cg.table[i][i] != cg.principal {
        return Err(Error::CompositionInconsistent(format!(
            "ramified prime {p}: class not 2-torsion"
        )));
    }
    Ok(PrimeData {
        p,
        kronecker: k,
        f_p: 1,
        pair: Some((i, j)),
    })
}

fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// The fixed representative of the pair {F_p, -F_p}: the class whose
/// reduced form is lexicographically smallest.
fn chosen_class(cg: &FormClassGroup, data: &PrimeData) -> usize {
    let (i, j) = data.pair.expect("split prime");
    if cg.forms[i] <= cg.forms[j] {
        i
    } else {
        j
    }
}

/// The transfer sequence: the product of F_p^{v_p(n)} over the abstract
/// class group, for n with all prime factors split and prime to the
/// conductor.
pub fn theta_prime(cg: &FormClassGroup, n: u64) -> Result<Sequence> {
    let mut s = Sequence::empty(cg.group.clone());
    for (p, v) in factorize(n) {
        let data =
            prime_data(cg, p as i64).map_err(|_| Error::NotInNPrime(n as i64))?;
        if data.f_p != 1 {
            return Err(Error::NotInNPrime(n as i64));
        }
        let cls = chosen_class(cg, &data);
        for _ in 0..v {
            s.push(cg.iso[cls]);
        }
    }
    Ok(s)
}

/// Membership of n in the principal-class norm monoid via the transfer:
/// theta'(n) must be a plus-minus weighted zero-sum sequence.
pub fn in_rcirc_via_transfer(cg: &FormClassGroup, n: u64) -> Result<bool> {
    let s = theta_prime(cg, n)?;
    let pm = WeightSet::plus_minus(&cg.group);
    Ok(s.is_wzs(&pm))
}

/// Direct search: does the principal reduced form represent n?
pub fn represents_principal_bruteforce(d: &Discriminant, n: u64) -> bool {
    let s = d.value.rem_euclid(2);
    let f = QForm {
        a: 1,
        b: s,
        c: (s * s - d.value) / 4,
    };
    let n = n as i64;
    if n == 0 {
        return true;
    }
    let y_bound = isqrt(4 * n / -d.value) + 1;
    for y in -y_bound..=y_bound {
        let dq = f.b * f.b * y * y - 4 * (f.c * y * y - n);
        if dq < 0 {
            continue;
        }
        let r = isqrt(dq);
        if r * r != dq {
            continue;
        }
        if (-f.b * y + r) % 2 == 0 {
            return true;
        }
    }
    false
}

/// Sets of factorization lengths of n inside the multiplicative monoid of
/// principal-class norms, computed arithmetically over the member divisors.
pub fn lengths_in_rcirc(cg: &FormClassGroup, n: u64) -> Result<LengthSet> {
    if !in_rcirc_via_transfer(cg, n)? {
        return Err(Error::NotInRcirc(n as i64));
    }
    // divisors of n, ascending
    let mut divisors = vec![1u64];
    for (p, v) in factorize(n) {
        let mut next = Vec::new();
        for &d in &divisors {
            let mut q = d;
            for _ in 0..=v {
                next.push(q);
                q *= p;
            }
        }
        divisors = next;
    }
    divisors.sort_unstable();
    let member: BTreeMap<u64, bool> = divisors
        .iter()
        .map(|&d| Ok((d, d > 1 && in_rcirc_via_transfer(cg, d)?)))
        .collect::<Result<_>>()?;
    let is_atom = |d: u64| -> bool {
        member[&d]
            && !divisors
                .iter()
                .any(|&e| e > 1 && e < d && d % e == 0 && member[&e] && member[&(d / e)])
    };
    let atoms: Vec<u64> = divisors.iter().copied().filter(|&d| is_atom(d)).collect();
    let mut lengths: BTreeMap<u64, LengthSet> = BTreeMap::new();
    lengths.insert(1, LengthSet::from([0u32]));
    for &d in &divisors {
        if d == 1 || !member[&d] {
            continue;
        }
        let mut ls = LengthSet::new();
        for &a in &atoms {
            if d % a == 0 {
                if let Some(sub) = lengths.get(&(d / a)) {
                    for &l in sub {
                        ls.insert(l + 1);
                    }
                }
            }
        }
        lengths.insert(d, ls);
    }
    Ok(lengths.remove(&n).expect("n is a member"))
}

/// True when every prime factor of n splits and is prime to the conductor.
pub fn admissible(cg: &FormClassGroup, n: u64) -> bool {
    factorize(n).keys().all(|&p| {
        matches!(prime_data(cg, p as i64), Ok(d) if d.f_p == 1)
    })
}
