//! Subgroups of GL2(Z/nZ), their orbits on torsion points, cusps of the
//! associated modular curve, and divisors of orbit units.
//!
//! Conventions, fixed once and used everywhere:
//!
//! - matrices act on row vectors from the right: (a1, a2) * [[a,b],[c,d]] =
//!   (a1*a + a2*c, a1*b + a2*d);
//! - cusps are double cosets G1 \ SL2(Z/nZ) / <T> with T = [[1,1],[0,1]];
//!   the coset containing the identity is the infinite cusp and is listed
//!   first; every group stores -1 (adjoined by the constructor if missing);
//! - the width of a cusp with representative sigma is the least e >= 1 with
//!   sigma T^e sigma^{-1} in G1; it always divides n;
//! - the vanishing order of the orbit unit u_O at a cusp c is
//!   12 n e_c Sum_{a in O sigma_c} ell(a), an integer bounded by n^4 in
//!   absolute value.
//!
//! All outputs are deterministic: element lists, orbits, and cusps are
//! sorted, with lexicographically least representatives.

pub mod rank;

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numtheory::{
    ell, enumerate_an, enumerate_nonzero, factor, is_rational_integer, rational, Rational,
    TorsionPoint,
};

pub use rank::integer_rank;

/// Default cap on the level for subgroup enumeration.
pub const LEVEL_CAP: u32 = 60;

/// An element of GL2(Z/nZ), row-major [[a, b], [c, d]] with entries mod n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GL2 {
    n: u32,
    m: [u32; 4],
}

impl GL2 {
    pub fn new(n: u32, entries: [i64; 4]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("level must be >= 2, got {n}")));
        }
        let m = entries.map(|x| x.rem_euclid(n as i64) as u32);
        let g = GL2 { n, m };
        if !g.is_invertible() {
            return Err(Error::InvalidInput(format!(
                "matrix {:?} has determinant {} not a unit mod {n}",
                m,
                g.det()
            )));
        }
        Ok(g)
    }

    pub fn identity(n: u32) -> Self {
        GL2 { n, m: [1, 0, 0, 1] }
    }

    pub fn minus_identity(n: u32) -> Self {
        let r = (n - 1) % n;
        GL2 { n, m: [r, 0, 0, r] }
    }

    /// T = [[1, 1], [0, 1]].
    pub fn upper_t(n: u32) -> Self {
        GL2 { n, m: [1, 1 % n, 0, 1] }
    }

    /// S = [[0, -1], [1, 0]].
    pub fn weyl_s(n: u32) -> Self {
        GL2 { n, m: [0, n - 1, 1, 0] }
    }

    pub fn diagonal(n: u32, u: u32, v: u32) -> Result<Self> {
        GL2::new(n, [u as i64, 0, 0, v as i64])
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> [u32; 4] {
        self.m
    }

    pub fn det(&self) -> u32 {
        let n = self.n as u64;
        let [a, b, c, d] = self.m.map(|x| x as u64);
        ((a * d % n + n * n - b * c % n) % n) as u32
    }

    pub fn is_invertible(&self) -> bool {
        num_integer::gcd(self.det() as u64, self.n as u64) == 1
    }

    pub fn mul(&self, rhs: &GL2) -> GL2 {
        assert_eq!(self.n, rhs.n, "level mismatch");
        let n = self.n as u64;
        let [a, b, c, d] = self.m.map(|x| x as u64);
        let [e, f, g, h] = rhs.m.map(|x| x as u64);
        GL2 {
            n: self.n,
            m: [
                ((a * e + b * g) % n) as u32,
                ((a * f + b * h) % n) as u32,
                ((c * e + d * g) % n) as u32,
                ((c * f + d * h) % n) as u32,
            ],
        }
    }

    pub fn inv(&self) -> GL2 {
        let n = self.n as i64;
        let det = self.det() as i64;
        let det_inv = mod_inverse(det, n).expect("determinant is a unit");
        let [a, b, c, d] = self.m.map(|x| x as i64);
        let e = |x: i64| (x.rem_euclid(n)) as u32;
        GL2 {
            n: self.n,
            m: [
                e(d * det_inv),
                e(-b * det_inv),
                e(-c * det_inv),
                e(a * det_inv),
            ],
        }
    }

    pub fn pow(&self, mut e: u64) -> GL2 {
        let mut base = *self;
        let mut acc = GL2::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Right action on a torsion point (row vector times matrix).
    pub fn act(&self, p: &TorsionPoint) -> TorsionPoint {
        assert_eq!(self.n, p.level(), "level mismatch");
        let n = self.n as u64;
        let (c1, c2) = p.numerators();
        let (c1, c2) = (c1 as u64, c2 as u64);
        let [a, b, c, d] = self.m.map(|x| x as u64);
        let x = ((c1 * a + c2 * c) % n) as i64;
        let y = ((c1 * b + c2 * d) % n) as i64;
        TorsionPoint::new(self.n, x, y).expect("an invertible matrix keeps a nonzero point nonzero")
    }
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n))
}

/// |SL2(Z/nZ)| = n^3 prod_{p | n} (1 - p^-2).
pub fn sl2_order(n: u64) -> u64 {
    let mut out = n * n * n;
    for (p, _) in factor(n) {
        out = out / (p * p) * (p * p - 1);
    }
    out
}

/// A subgroup of GL2(Z/nZ) containing -1, with its determinant-1 part.
pub struct Subgroup {
    n: u32,
    generators: Vec<GL2>,
    elements: Vec<GL2>,
    element_set: HashSet<[u32; 4]>,
    g1: Vec<GL2>,
    g1_set: HashSet<[u32; 4]>,
    det_image: Vec<u32>,
    minus_one_adjoined: bool,
}

impl Subgroup {
    /// Closure of the generators, with -1 adjoined if the generators do not
    /// already produce it.
    pub fn new(n: u32, generators: &[GL2], level_cap: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("level must be >= 2, got {n}")));
        }
        if n > level_cap {
            return Err(Error::ResourceCap(format!(
                "level {n} exceeds the enumeration cap {level_cap}"
            )));
        }
        for g in generators {
            if g.level() != n {
                return Err(Error::InvalidInput(format!(
                    "generator level {} does not match subgroup level {n}",
                    g.level()
                )));
            }
        }
        let raw = closure(n, generators);
        let minus = GL2::minus_identity(n);
        let minus_one_adjoined = !raw.contains(&minus.m);
        let element_set: HashSet<[u32; 4]> = if minus_one_adjoined {
            // -1 is central, so adjoining it just doubles the closure
            raw.iter().map(|m| minus.mul(&GL2 { n, m: *m }).m).chain(raw.iter().copied()).collect()
        } else {
            raw
        };
        let mut elements: Vec<GL2> = element_set.iter().map(|m| GL2 { n, m: *m }).collect();
        elements.sort();
        let g1: Vec<GL2> = elements.iter().filter(|g| g.det() == 1).copied().collect();
        let g1_set = g1.iter().map(|g| g.m).collect();
        let mut det_image: Vec<u32> = elements.iter().map(|g| g.det()).collect();
        det_image.sort_unstable();
        det_image.dedup();
        Ok(Subgroup {
            n,
            generators: generators.to_vec(),
            elements,
            element_set,
            g1,
            g1_set,
            det_image,
            minus_one_adjoined,
        })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[GL2] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn g1_order(&self) -> u64 {
        self.g1.len() as u64
    }

    pub fn contains(&self, g: &GL2) -> bool {
        g.level() == self.n && self.element_set.contains(&g.m)
    }

    pub fn minus_one_adjoined(&self) -> bool {
        self.minus_one_adjoined
    }

    /// Image of the determinant map, sorted.
    pub fn det_image(&self) -> &[u32] {
        &self.det_image
    }

    /// Orbits of the det-1 part acting on points of exact order n, sorted by
    /// their lexicographically least member.
    pub fn orbits(&self) -> Vec<Orbit> {
        self.orbits_of(enumerate_an(self.n))
    }

    /// Orbits on all nonzero points of denominator dividing n.  This is the
    /// index family whose unit divisors span the full lattice; the
    /// exact-order orbits alone do not when n is divisible by two primes.
    pub fn unit_orbits(&self) -> Vec<Orbit> {
        self.orbits_of(enumerate_nonzero(self.n))
    }

    fn orbits_of(&self, points: Vec<TorsionPoint>) -> Vec<Orbit> {
        let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(points.len());
        let mut orbits = Vec::new();
        for p in &points {
            if seen.contains(&p.numerators()) {
                continue;
            }
            let mut members: Vec<TorsionPoint> = self.g1.iter().map(|g| g.act(p)).collect();
            members.sort();
            members.dedup();
            for q in &members {
                seen.insert(q.numerators());
            }
            orbits.push(Orbit { points: members });
        }
        orbits
    }

    /// Orbit count on primitive row vectors of (Z/n)^2; must agree with the
    /// torsion-point orbit count and the cusp count.
    pub fn primitive_vector_orbit_count(&self) -> usize {
        let n = self.n;
        let mut seen: HashSet<(u32, u32)> = HashSet::new();
        let mut count = 0;
        for x in 0..n {
            for y in 0..n {
                let g = num_integer::gcd(num_integer::gcd(x as u64, y as u64), n as u64);
                if g != 1 || seen.contains(&(x, y)) {
                    continue;
                }
                count += 1;
                for m in &self.g1 {
                    let [a, b, c, d] = m.m.map(|v| v as u64);
                    let nx = ((x as u64 * a + y as u64 * c) % n as u64) as u32;
                    let ny = ((x as u64 * b + y as u64 * d) % n as u64) as u32;
                    seen.insert((nx, ny));
                }
            }
        }
        count
    }

    /// Number of cusps, computed from the torsion-point orbits.
    pub fn nu_infty(&self) -> usize {
        self.orbits().len()
    }

    /// Cusps as double cosets, infinite cusp first, with widths.
    pub fn cusps(&self) -> Vec<Cusp> {
        let n = self.n;
        let sl2 = sl2_elements(n);
        debug_assert_eq!(sl2.len() as u64, sl2_order(n as u64));
        let t = GL2::upper_t(n);
        let mut visited: HashSet<[u32; 4]> = HashSet::with_capacity(sl2.len());
        let mut cusps = Vec::new();
        // identity processed first so the infinite cusp gets label 0
        let identity = GL2::identity(n);
        for sigma in std::iter::once(&identity).chain(sl2.iter()) {
            if visited.contains(&sigma.m) {
                continue;
            }
            let mut members = Vec::new();
            for g in &self.g1 {
                let mut x = g.mul(sigma);
                for _ in 0..n {
                    if visited.insert(x.m) {
                        members.push(x);
                    }
                    x = x.mul(&t);
                }
            }
            members.sort();
            let rep = if members.binary_search(&identity).is_ok() {
                identity
            } else {
                members[0]
            };
            let width = self.width_at(&rep);
            debug_assert_eq!(n % width, 0, "width divides the level");
            debug_assert_eq!(members.len() as u64, self.g1_order() * width as u64);
            cusps.push(Cusp {
                rep,
                width,
                coset_size: members.len() as u64,
            });
        }
        cusps.sort_by_key(|c| {
            let infinite = c.rep == identity;
            (!infinite, c.rep)
        });
        cusps
    }

    fn width_at(&self, sigma: &GL2) -> u32 {
        let conj = sigma.mul(&GL2::upper_t(self.n)).mul(&sigma.inv());
        let mut power = conj;
        for e in 1..=self.n {
            if self.g1_set.contains(&power.m) {
                return e;
            }
            power = power.mul(&conj);
        }
        unreachable!("T^n is the identity, which lies in every subgroup")
    }

    /// Vanishing order of the orbit unit at a cusp:
    /// 12 n e_c Sum_{a in O sigma_c} ell(a).
    pub fn ord_at_cusp(&self, orbit: &Orbit, cusp: &Cusp) -> Result<i64> {
        let mut sum = Rational::zero();
        for a in &orbit.points {
            sum += ell(&cusp.rep.act(a));
        }
        let ord = sum * rational(12 * self.n as i64, 1) * rational(cusp.width as i64, 1);
        if !is_rational_integer(&ord) {
            return Err(Error::Consistency(format!(
                "cusp order {ord} of orbit at {} is not an integer",
                orbit.rep()
            )));
        }
        let value = ord.to_integer();
        let cap = (self.n as i64).pow(4);
        let value = i64::try_from(&value).map_err(|_| {
            Error::Consistency(format!("cusp order {value} overflows"))
        })?;
        if value.abs() >= cap {
            return Err(Error::Consistency(format!(
                "cusp order {value} violates the |ord| < n^4 bound"
            )));
        }
        Ok(value)
    }

    /// Divisor matrix: rows indexed by orbits, columns by cusps.
    ///
    /// Checks the structural laws on the way out: every row sums to zero and
    /// the column of every cusp sums to zero.
    pub fn divisor_matrix(&self, orbits: &[Orbit], cusps: &[Cusp]) -> Result<Vec<Vec<i64>>> {
        let mut rows = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let row: Vec<i64> = cusps
                .iter()
                .map(|c| self.ord_at_cusp(orbit, c))
                .collect::<Result<_>>()?;
            if row.iter().sum::<i64>() != 0 {
                return Err(Error::Consistency(format!(
                    "divisor of orbit at {} has nonzero degree",
                    orbit.rep()
                )));
            }
            rows.push(row);
        }
        for j in 0..cusps.len() {
            if rows.iter().map(|r| r[j]).sum::<i64>() != 0 {
                return Err(Error::Consistency(format!("column {j} of divisor matrix has nonzero sum")));
            }
        }
        Ok(rows)
    }

    /// Rank of the lattice spanned by all unit divisors; checked against
    /// the cusp count on the way out.
    pub fn divisor_rank(&self) -> Result<usize> {
        let orbits = self.unit_orbits();
        let cusps = self.cusps();
        let matrix = self.divisor_matrix(&orbits, &cusps)?;
        let rank = integer_rank(&matrix);
        if rank + 1 != cusps.len() {
            return Err(Error::Consistency(format!(
                "unit divisor rank {rank} differs from cusp count {} minus one",
                cusps.len()
            )));
        }
        Ok(rank)
    }

    /// Picks the unit W with vanishing order zero at the chosen cusp, drawn
    /// from the full nonzero-point orbit family.
    pub fn select_units(&self, w_cusp: usize) -> Result<UnitRecipe> {
        let cusps = self.cusps();
        if cusps.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "unit selection needs at least three cusps, found {}",
                cusps.len()
            )));
        }
        if w_cusp >= cusps.len() {
            return Err(Error::InvalidInput(format!(
                "cusp index {w_cusp} out of range ({} cusps)",
                cusps.len()
            )));
        }
        let orbits = self.unit_orbits();
        let matrix = self.divisor_matrix(&orbits, &cusps)?;
        select_from_matrix(&matrix, w_cusp)
    }
}

/// Unit selection on a precomputed divisor matrix.
fn select_from_matrix(matrix: &[Vec<i64>], w: usize) -> Result<UnitRecipe> {
    let min = matrix.iter().map(|r| r[w]).min().expect("nonempty matrix");
    if min == 0 {
        // the whole column vanishes; any orbit with a nonzero divisor works
        let u = matrix
            .iter()
            .position(|r| r.iter().any(|&x| x != 0))
            .ok_or_else(|| Error::Consistency("all orbit divisors vanish".into()))?;
        return Ok(UnitRecipe {
            u_orbit: u,
            v_orbit: None,
            exponents: (1, 0),
            ord_w: (0, 0),
        });
    }
    let u = matrix.iter().position(|r| r[w] == min).expect("minimum attained");
    // most positive order first, then orbit index, until independence holds
    let mut candidates: Vec<usize> = (0..matrix.len()).filter(|&i| matrix[i][w] > 0).collect();
    candidates.sort_by_key(|&i| (-matrix[i][w], i));
    for v in candidates {
        let pair = [matrix[u].clone(), matrix[v].clone()];
        if integer_rank(&pair) == 2 {
            let (ord_u, ord_v) = (matrix[u][w], matrix[v][w]);
            return Ok(UnitRecipe {
                u_orbit: u,
                v_orbit: Some(v),
                exponents: (ord_v, -ord_u),
                ord_w: (ord_u, ord_v),
            });
        }
    }
    Err(Error::Consistency(
        "no positive-order orbit is independent of the chosen one".into(),
    ))
}

fn closure(n: u32, generators: &[GL2]) -> HashSet<[u32; 4]> {
    let identity = GL2::identity(n);
    let mut set: HashSet<[u32; 4]> = HashSet::new();
    set.insert(identity.m);
    let mut queue: Vec<GL2> = vec![identity];
    while let Some(e) = queue.pop() {
        for g in generators {
            let f = e.mul(g);
            if set.insert(f.m) {
                queue.push(f);
            }
        }
    }
    set
}

/// All of SL2(Z/nZ), generated by T and S, sorted.
pub fn sl2_elements(n: u32) -> Vec<GL2> {
    let gens = [GL2::upper_t(n), GL2::weyl_s(n)];
    let mut out: Vec<GL2> = closure(n, &gens).into_iter().map(|m| GL2 { n, m }).collect();
    out.sort();
    out
}

/// An orbit of torsion points under the det-1 part of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    points: Vec<TorsionPoint>,
}

impl Orbit {
    pub fn points(&self) -> &[TorsionPoint] {
        &self.points
    }

    /// Lexicographically least member.
    pub fn rep(&self) -> TorsionPoint {
        self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of ell over the orbit; 12n times this is the q-order of the
    /// orbit unit at the infinite cusp.
    pub fn ell_sum(&self) -> Rational {
        self.points.iter().map(ell).fold(Rational::zero(), |a, x| a + x)
    }
}

/// A cusp: double-coset representative, width, and coset size.
#[derive(Clone, Copy, Debug)]
pub struct Cusp {
    pub rep: GL2,
    pub width: u32,
    pub coset_size: u64,
}

impl Cusp {
    pub fn is_infinite(&self) -> bool {
        self.rep == GL2::identity(self.rep.level())
    }
}

/// Which orbit units to combine so the result has order zero at the chosen
/// cusp: W = U^{e_u} V^{e_v} with (e_u, e_v) = exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRecipe {
    pub u_orbit: usize,
    pub v_orbit: Option<usize>,
    /// Exponents (on U, on V); both positive in the two-orbit branch.
    pub exponents: (i64, i64),
    /// Orders of (U, V) at the chosen cusp before combining.
    pub ord_w: (i64, i64),
}

/// The standard test battery of subgroups at a given level: the center,
/// the Borel (upper triangular) subgroup, the diagonal subgroup, and the
/// full group.
pub fn battery(n: u32) -> Vec<(&'static str, Vec<GL2>)> {
    let units: Vec<u32> = (1..n).filter(|&u| num_integer::gcd(u as u64, n as u64) == 1).collect();
    let mut diag = Vec::new();
    for &u in &units {
        for &v in &units {
            diag.push(GL2::diagonal(n, u, v).unwrap());
        }
    }
    let mut borel = diag.clone();
    borel.push(GL2::upper_t(n));
    let mut full = vec![GL2::upper_t(n), GL2::weyl_s(n)];
    for &u in &units {
        full.push(GL2::diagonal(n, u, 1).unwrap());
    }
    vec![
        ("center", Vec::new()),
        ("borel", borel),
        ("diagonal", diag),
        ("full", full),
    ]
}
