//! Exact counts of n-vertex 2-connected facially complete graphs per type.
//!
//! Types 1-3 reduce to partitions into at most three parts. Type 4 counts
//! radii patterns as two-color bracelets minus the three outerplanar
//! classes. Type 5 counts polygon dissections up to the dihedral group by
//! Burnside averaging, with per-symmetry fixed counts computed from labeled
//! dissection numbers (Schroeder numbers) via chamber decompositions.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("no closed-form count for type {0} (only types 1-5 have formulas)")]
    UnsupportedType(u8),
    #[error("count exceeds supported scale: {0}")]
    ScaleLimit(String),
}

/// Largest n whose counts stay comfortably inside u128.
pub const MAX_COUNT_N: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub n: usize,
    pub type1: u128,
    pub type2: u128,
    pub type3: u128,
    pub type4: u128,
    pub type5: u128,
    pub total_2connected: u128,
    pub total_nonouterplanar: u128,
}

/// Partitions of m into at most 3 nonnegative parts.
pub fn partitions_at_most3(m: usize) -> u128 {
    ((m as u128 + 3) * (m as u128 + 3) + 6) / 12
}

/// Euler's totient by trial division.
fn phi(mut n: u128) -> u128 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            out.push(d);
        }
    }
    out
}

/// Two-color bracelets on m beads (binary strings up to rotation and
/// reflection). Exact integer arithmetic; the division is asserted exact.
pub fn bracelets(m: usize) -> u128 {
    if m == 0 {
        return 1;
    }
    let mu = m as u128;
    let reflections = mu * (3 + mu % 2) * (1u128 << (m / 2));
    let rotations: u128 = divisors(m)
        .into_iter()
        .map(|d| phi(d as u128) * (1u128 << (m / d)))
        .sum();
    let num = reflections + 2 * rotations;
    assert_eq!(num % (4 * mu), 0, "bracelet sum must divide evenly");
    num / (4 * mu)
}

/// Labeled dissections of a convex p-gon by noncrossing diagonals
/// (little Schroeder numbers, offset so that f(3) = 1, f(4) = 3, f(5) = 11).
/// f(2) = 1 covers the degenerate chamber used in the symmetry counts.
fn schroeder_table(pmax: usize) -> Vec<u128> {
    // a(0) = a(1) = 1, (k+1) a(k) = 3(2k-1) a(k-1) - (k-2) a(k-2); f(p) = a(p-2)
    let mut a = vec![1u128, 1u128];
    for k in 2..=pmax.saturating_sub(2) {
        let ku = k as u128;
        let num = 3 * (2 * ku - 1) * a[k - 1] - (ku - 2) * a[k - 2];
        assert_eq!(num % (ku + 1), 0);
        a.push(num / (ku + 1));
    }
    (0..=pmax).map(|p| if p < 2 { 0 } else { a[p - 2] }).collect()
}

/// Sum of a[i] * b[len-1-i]: one coefficient of the product series.
fn convolve(a: &[u128], b: &[u128]) -> u128 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter().rev()).map(|(&x, &y)| x * y).sum()
}

struct DissectionCounter {
    f: Vec<u128>, // f[p] = labeled dissections of a p-gon, f[2] = 1
    g: Vec<u128>, // g[p] = symmetric dissections of an axis chamber of half-size p
}

impl DissectionCounter {
    fn new(n: usize) -> Self {
        let f = schroeder_table(n + 2);
        let g = (0..f.len())
            .map(|p| if p < 3 { 1 } else { 2 * f[p] })
            .collect();
        DissectionCounter { f, g }
    }

    /// Chain of chambers with total arc length r along a fixed direction:
    /// sum over compositions of r of the product of f(part + 1).
    fn chain(&self, r: usize) -> u128 {
        let mut c = vec![0u128; r + 1];
        c[0] = 1;
        for t in 1..=r {
            c[t] = (1..=t).map(|gap| self.f[gap + 1] * c[t - gap]).sum();
        }
        c[r]
    }

    /// Dissections fixed by a nontrivial rotation whose orbit structure has
    /// fundamental arc m (= gcd(n, k)): the central cell's vertices pick a
    /// nonempty subset of the arc; each gap contributes independent labeled
    /// dissections. Linearized by anchoring position 0.
    fn rotation_fix(&self, m: usize) -> u128 {
        let mut total = self.chain(m); // position 0 on the central cell
        for gap in 2..=m {
            // position 0 strictly inside a gap of this size
            total += (gap as u128 - 1) * self.f[gap + 1] * self.chain(m - gap);
        }
        total
    }

    /// Prefix sums over rung sets along an axis: pfx[t] = total weight of
    /// rung sets whose last rung is t, including the apex chamber factor.
    fn rung_prefix(&self, tmax: usize) -> Vec<u128> {
        let mut pfx = vec![0u128; tmax + 1];
        for t in 1..=tmax {
            pfx[t] = self.g[t + 1] + convolve(&pfx[1..t], &self.g[2..=t]);
        }
        pfx
    }

    /// Dissections fixed by a reflection whose axis passes through at least
    /// one vertex (n odd: vertex-edge axis with m = (n-1)/2; n even:
    /// vertex-vertex axis with m = n/2). Rungs sit at side positions
    /// 1..m-1; chambers count via g.
    fn vertex_axis_fix(&self, m: usize) -> u128 {
        let pfx = self.rung_prefix(m.saturating_sub(1));
        // g[m + 1] is the no-rung case.
        self.g[m + 1] + convolve(&pfx[1..], &self.g[2..=m])
    }

    /// Dissections fixed by an edge-edge axis (n even, m = n/2 side
    /// vertices 0..m-1): rungs at positions 1..m-2, both end chambers
    /// closed off by the crossed edges.
    fn edge_axis_fix(&self, m: usize) -> u128 {
        if m < 2 {
            return 1;
        }
        let pfx = self.rung_prefix(m - 2);
        self.g[m] + convolve(&pfx[1..], &self.g[2..m])
    }

    fn count(&self, n: usize) -> u128 {
        let mut fixed = self.f[n]; // identity
        for d in divisors(n) {
            if d < n {
                // rotations with gcd(n, k) = d: phi(n/d) of them
                fixed += phi((n / d) as u128) * self.rotation_fix(d);
            }
        }
        let reflections = if n % 2 == 1 {
            n as u128 * self.vertex_axis_fix((n - 1) / 2)
        } else {
            (n as u128 / 2) * (self.vertex_axis_fix(n / 2) + self.edge_axis_fix(n / 2))
        };
        fixed += reflections;
        assert_eq!(fixed % (2 * n as u128), 0, "Burnside sum must divide evenly");
        fixed / (2 * n as u128)
    }
}

/// Dissections of a convex n-gon by noncrossing diagonals, counted up to
/// rotation and reflection.
pub fn dissections_up_to_symmetry(n: usize) -> Result<u128, CountError> {
    if n < 3 {
        return Ok(0);
    }
    if n > MAX_COUNT_N {
        return Err(CountError::ScaleLimit(format!(
            "dissection counts overflow u128 beyond n = {MAX_COUNT_N}, got {n}"
        )));
    }
    Ok(DissectionCounter::new(n).count(n))
}

/// Brute-force oracle: enumerate noncrossing chord sets, keep the
/// lexicographically least under the dihedral group, count representatives.
pub fn dissections_brute(n: usize) -> Result<u128, CountError> {
    if n < 3 {
        return Ok(0);
    }
    if n > 12 {
        return Err(CountError::ScaleLimit(format!(
            "brute dissection enumeration supports n <= 12, got {n}"
        )));
    }
    let mut chords = Vec::new();
    for a in 0..n {
        for b in (a + 2)..n {
            if !(a == 0 && b == n - 1) {
                chords.push((a, b));
            }
        }
    }
    let crossing = |&(a, b): &(usize, usize), &(c, d): &(usize, usize)| {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    let mut count = 0u128;
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    fn rec(
        chords: &[(usize, usize)],
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        crossing: &impl Fn(&(usize, usize), &(usize, usize)) -> bool,
        n: usize,
        count: &mut u128,
    ) {
        // every node of the search tree is a valid dissection
        let mut sorted = chosen.clone();
        sorted.sort_unstable();
        if crate::catalog::canon_chords(n, &sorted) == sorted {
            *count += 1;
        }
        for i in from..chords.len() {
            if chosen.iter().all(|c| !crossing(c, &chords[i])) {
                chosen.push(chords[i]);
                rec(chords, i + 1, chosen, crossing, n, count);
                chosen.pop();
            }
        }
    }
    rec(&chords, 0, &mut chosen, &crossing, n, &mut count);
    Ok(count)
}

/// Count n-vertex catalog graphs of one 2-connected type (1-5).
pub fn count_by_type(t: u8, n: usize) -> Result<u128, CountError> {
    if n > MAX_COUNT_N {
        return Err(CountError::ScaleLimit(format!(
            "counts overflow u128 beyond n = {MAX_COUNT_N}, got {n}"
        )));
    }
    match t {
        1 => Ok(if n >= 6 { partitions_at_most3(n - 6) } else { 0 }),
        2 => Ok(if n >= 7 { partitions_at_most3(n - 7) } else { 0 }),
        3 => Ok(if n >= 8 { partitions_at_most3(n - 8) } else { 0 }),
        4 => Ok(if n >= 4 { bracelets(n - 1) - 3 } else { 0 }),
        5 => dissections_up_to_symmetry(n),
        other => Err(CountError::UnsupportedType(other)),
    }
}

pub fn count_totals(n: usize) -> Result<CountTable, CountError> {
    let t: Vec<u128> = (1..=5u8).map(|k| count_by_type(k, n)).collect::<Result<_, _>>()?;
    Ok(CountTable {
        n,
        type1: t[0],
        type2: t[1],
        type3: t[2],
        type4: t[3],
        type5: t[4],
        total_2connected: t.iter().sum(),
        total_nonouterplanar: t[..4].iter().sum(),
    })
}
