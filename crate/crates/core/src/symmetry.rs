//! t-symmetry: a group of self-bijections of F preserving the t-intersection
//! relation (in both directions) and acting transitively on F.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::extremal::{beta_with_guard, describe, ell_value, verify_pointwise_inequality, BETA_GUARD};
use crate::family::{decompose, MemberSet, SetFamily};
use crate::rational::Rational;
use crate::report::{VerificationReport, Witness};

/// Largest family accepted by the brute-force automorphism search.
pub const BRUTE_FORCE_GUARD: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct GroundPermutation {
    image: Vec<usize>,
}

impl GroundPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter(format!("{image:?} is not a permutation")));
            }
        }
        Ok(GroundPermutation { image })
    }

    /// The cycle `(c_0 c_1 ... c_m)` on a ground set of size `n`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for (i, &c) in cycle.iter().enumerate() {
            if c >= n {
                return Err(Error::ElementOutOfRange { element: c, ground: n });
            }
            image[c] = cycle[(i + 1) % cycle.len()];
        }
        GroundPermutation::new(image)
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, m: &MemberSet) -> MemberSet {
        MemberSet::from_bits(m.elements().fold(0u128, |b, e| b | 1 << self.image[e]))
    }
}

impl TryFrom<Vec<usize>> for GroundPermutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        GroundPermutation::new(v)
    }
}

impl From<GroundPermutation> for Vec<usize> {
    fn from(g: GroundPermutation) -> Self {
        g.image
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryMethod {
    Generators,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Verified ground permutations generating a transitive group.
    Generators(Vec<GroundPermutation>),
    /// Relation-preserving bijections of member indices, one mapping member 0
    /// onto each member of its orbit.
    Transversal(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub is_t_symmetric: bool,
    pub method: SymmetryMethod,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<usize>>,
    pub certificate: Certificate,
}

/// The member permutation `A ↦ g(A)`.
pub fn induced_action(f: &SetFamily, g: &GroundPermutation) -> Result<Vec<usize>> {
    if g.len() != f.ground_size() {
        return Err(Error::InvalidParameter(format!(
            "permutation of {} points on a ground set of size {}",
            g.len(),
            f.ground_size()
        )));
    }
    f.members()
        .iter()
        .map(|m| f.index_of(&g.apply(m)).ok_or(Error::NotClosed))
        .collect()
}

fn orbits_from(n: usize, step: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in step(v) {
                if orbit_of[w] == usize::MAX {
                    orbit_of[w] = id;
                    orbit.push(w);
                    queue.push_back(w);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbits of the group generated by `gens` on the members. Ground
/// permutations preserve every intersection size, so the relation is kept
/// in both directions automatically; `t` is only recorded.
pub fn is_t_symmetric_via_generators(
    f: &SetFamily,
    _t: usize,
    gens: &[GroundPermutation],
) -> Result<SymmetryReport> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("t-symmetry"));
    }
    let actions: Vec<Vec<usize>> = gens.iter().map(|g| induced_action(f, g)).collect::<Result<_>>()?;
    let orbits = orbits_from(f.len(), |v| actions.iter().map(|a| a[v]).collect());
    Ok(SymmetryReport {
        is_t_symmetric: orbits.len() == 1,
        method: SymmetryMethod::Generators,
        orbit_count: orbits.len(),
        orbits,
        certificate: Certificate::Generators(gens.to_vec()),
    })
}

struct AutSearch {
    n: usize,
    rel: Vec<Vec<bool>>,
    degree: Vec<usize>,
}

impl AutSearch {
    /// The lexicographically least relation automorphism with `from ↦ to`.
    fn find(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if self.degree[from] != self.degree[to] {
            return None;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        map[from] = to;
        used[to] = true;
        self.extend(0, &mut map, &mut used).then_some(map)
    }

    fn extend(&self, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if x == self.n {
            return true;
        }
        if map[x] != usize::MAX {
            return self.consistent(x, map[x], map) && self.extend(x + 1, map, used);
        }
        for y in 0..self.n {
            if used[y] || self.degree[x] != self.degree[y] || !self.consistent(x, y, map) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend(x + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    fn consistent(&self, x: usize, y: usize, map: &[usize]) -> bool {
        (0..self.n).all(|z| z == x || map[z] == usize::MAX || self.rel[x][z] == self.rel[y][map[z]])
    }
}

/// Decides t-symmetry by searching for automorphisms of the relation
/// `{(A,B) : A ≠ B, |A∩B| >= t}` among all bijections of F.
pub fn brute_force_t_symmetric(f: &SetFamily, t: usize) -> Result<SymmetryReport> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("t-symmetry"));
    }
    if f.len() > BRUTE_FORCE_GUARD {
        return Err(Error::guard("family size for automorphism search", f.len(), BRUTE_FORCE_GUARD));
    }
    let n = f.len();
    let g = ConflictGraph::new(f, t);
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && !g.adjacent(i, j)).collect())
        .collect();
    let degree = rel.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let s = AutSearch { n, rel, degree };
    let transversal: Vec<Vec<usize>> = (0..n).filter_map(|b| s.find(0, b)).collect();
    // orbits: w is in the orbit of v iff some automorphism maps v to w
    let orbits = orbits_from(n, |v| (0..n).filter(|&w| w != v && s.find(v, w).is_some()).collect());
    Ok(SymmetryReport {
        is_t_symmetric: orbits.len() == 1,
        method: SymmetryMethod::BruteForce,
        orbit_count: orbits.len(),
        orbits,
        certificate: Certificate::Transversal(transversal),
    })
}

/// What the symmetry hypothesis of [`verify_wz`] rests on.
#[derive(Clone, Copy, Debug)]
pub enum SymmetryBasis<'a> {
    Certified(&'a SymmetryReport),
    /// Checked anyway, at the caller's request; recorded in the report.
    Override,
}

/// Checks |A^{t,+}| + (l/|F|)|A^{t,-}| <= l for every A ⊆ F and then
/// β(F,t) = l/|F|.
pub fn verify_wz(f: &SetFamily, t: usize, basis: SymmetryBasis<'_>) -> Result<VerificationReport> {
    let basis_name = match basis {
        SymmetryBasis::Certified(r) if r.is_t_symmetric => match r.method {
            SymmetryMethod::Generators => "generators",
            SymmetryMethod::BruteForce => "brute_force",
        },
        SymmetryBasis::Certified(_) => {
            return Err(Error::HypothesisFails("family is not certified t-symmetric".into()))
        }
        SymmetryBasis::Override => "override",
    };
    let l = ell_value(f, t)?;
    let c = Rational::ratio(l, f.len());
    let ineq = verify_pointwise_inequality(f, t, c)?;
    let mut rep = VerificationReport::new("thm-3.8", format!("{},t={t}", describe(f)));
    let d = decompose(f, t);
    let at_full = Rational::from_int(d.plus.len() as i64) + c * Rational::from_int(d.minus.len() as i64);
    rep.value("symmetry_basis", basis_name)
        .value("ell", l)
        .value("ratio", c)
        .value("lhs_at_full", at_full)
        .value("violated_at_full", at_full > Rational::from_int(l as i64));
    for (k, v) in &ineq.computed {
        if k == "violations" {
            rep.value(k, v.clone());
        }
    }
    rep.witnesses.extend(ineq.witnesses.clone());
    rep.failures.extend(ineq.failures.iter().cloned());
    rep.passed &= ineq.passed;
    if ineq.passed {
        let b = beta_with_guard(f, t, BETA_GUARD)?;
        rep.value("beta", b.beta);
        rep.check(b.beta == c, "beta differs from l/|F|");
    }
    if let SymmetryBasis::Certified(r) = basis {
        if let Certificate::Generators(gens) = &r.certificate {
            rep.witness(
                "generators",
                Witness::Labels(gens.iter().map(|g| g.image().to_vec()).collect()),
            );
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, sets).unwrap()
    }

    #[test]
    fn permutation_validation() {
        assert!(GroundPermutation::new(vec![1, 0, 2]).is_ok());
        assert!(GroundPermutation::new(vec![1, 1, 2]).is_err());
        assert!(GroundPermutation::new(vec![3, 0, 1]).is_err());
        assert_eq!(GroundPermutation::cycle(3, &[0, 1, 2]).unwrap().image(), &[1, 2, 0]);
    }

    #[test]
    fn closure_failure() {
        let f = fam(2, &[&[0]]);
        let swap = GroundPermutation::new(vec![1, 0]).unwrap();
        assert_eq!(induced_action(&f, &swap).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn two_related_sets_are_symmetric() {
        let f = fam(4, &[&[1, 2], &[1, 3]]);
        let r = brute_force_t_symmetric(&f, 1).unwrap();
        assert!(r.is_t_symmetric);
        assert_eq!(r.certificate, Certificate::Transversal(vec![vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn star_is_not_symmetric() {
        let f = fam(3, &[&[0], &[1], &[2], &[0, 1, 2]]);
        let r = brute_force_t_symmetric(&f, 1).unwrap();
        assert!(!r.is_t_symmetric);
        assert_eq!(r.orbits, vec![vec![0, 1, 2], vec![3]]);
    }
}
