//! Monomial spaces and monomial ideals: strong stability, Borel closure,
//! minimal generators, Hilbert functions, codimension, and the auxiliary
//! ideal `J(T)` built from a strongly stable space `T`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{count_of_degree, monomials_of_degree, Monomial};

/// A set of monomials of one degree, i.e. the space they span.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialSpace {
    nvars: usize,
    degree: u32,
    monomials: BTreeSet<Monomial>,
}

impl MonomialSpace {
    pub fn new(nvars: usize, degree: u32, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let monomials: BTreeSet<Monomial> = monomials.into_iter().collect();
        for m in &monomials {
            if m.nvars() != nvars {
                return Err(Error::Dimension(format!("{m} is not in {nvars} variables")));
            }
            if m.degree() != degree {
                return Err(Error::Degree(format!("{m} does not have degree {degree}")));
            }
        }
        Ok(MonomialSpace {
            nvars,
            degree,
            monomials,
        })
    }

    pub fn empty(nvars: usize, degree: u32) -> Self {
        MonomialSpace {
            nvars,
            degree,
            monomials: BTreeSet::new(),
        }
    }

    /// All monomials of degree `degree`.
    pub fn full(nvars: usize, degree: u32) -> Self {
        MonomialSpace {
            nvars,
            degree,
            monomials: monomials_of_degree(nvars, degree).into_iter().collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Monomials in revlex-descending order.
    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter().rev()
    }

    pub fn is_subset(&self, other: &MonomialSpace) -> bool {
        self.monomials.is_subset(&other.monomials)
    }

    /// Closed under every exchange `x_i * m / x_j`, `i < j`.
    pub fn is_strongly_stable(&self) -> bool {
        self.monomials
            .iter()
            .all(|m| m.borel_moves().all(|b| self.monomials.contains(&b)))
    }

    /// Smallest strongly stable space of this degree containing `self`.
    pub fn borel_closure(&self) -> MonomialSpace {
        let mut closed = self.monomials.clone();
        let mut frontier: Vec<Monomial> = closed.iter().cloned().collect();
        while let Some(m) = frontier.pop() {
            for b in m.borel_moves() {
                if closed.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        MonomialSpace {
            nvars: self.nvars,
            degree: self.degree,
            monomials: closed,
        }
    }

    /// `(T : m)`: monomials `u` of degree `d - deg m` with `u * m` in `T`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialSpace> {
        if m.degree() > self.degree {
            return Err(Error::Degree(format!(
                "colon by {m} of degree {} exceeds {}",
                m.degree(),
                self.degree
            )));
        }
        Ok(MonomialSpace {
            nvars: self.nvars,
            degree: self.degree - m.degree(),
            monomials: self.monomials.iter().filter_map(|t| t.div(m)).collect(),
        })
    }

    /// `(T : x_n^r)` for the last variable.
    pub fn colon_last_power(&self, r: u32) -> Result<MonomialSpace> {
        let mut e = vec![0; self.nvars];
        if let Some(last) = e.last_mut() {
            *last = r;
        }
        self.colon(&Monomial::new(e))
    }

    /// Drop the top `r` variables: keep the monomials not involving them.
    pub fn restrict(&self, r: usize) -> Result<MonomialSpace> {
        if r >= self.nvars {
            return Err(Error::Dimension(format!(
                "cannot drop {r} of {} variables",
                self.nvars
            )));
        }
        Ok(MonomialSpace {
            nvars: self.nvars - r,
            degree: self.degree,
            monomials: self.monomials.iter().filter_map(|m| m.restrict(r)).collect(),
        })
    }

    /// `T * <x1, ..., xn>`, a space of degree `d + 1`.
    pub fn times_variables(&self) -> MonomialSpace {
        let monomials = self
            .monomials
            .iter()
            .flat_map(|m| (1..=self.nvars).map(move |i| m.mul_var(i)))
            .collect();
        MonomialSpace {
            nvars: self.nvars,
            degree: self.degree + 1,
            monomials,
        }
    }

    pub fn to_vec(&self) -> Vec<Monomial> {
        self.iter().cloned().collect()
    }
}

impl fmt::Display for MonomialSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for MonomialSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A monomial ideal, stored by its minimal generators. Degree pieces are
/// produced on demand and cached.
#[derive(Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: BTreeSet<Monomial>,
    #[serde(skip)]
    cache: Mutex<HashMap<u32, Arc<MonomialSpace>>>,
}

impl Clone for MonomialIdeal {
    fn clone(&self) -> Self {
        MonomialIdeal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.generators == other.generators
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// The ideal generated by `gens`; non-minimal generators are discarded.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = all.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::Dimension(format!("{bad} is not in {nvars} variables")));
        }
        all.sort_by_key(|m| m.degree());
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in all {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        Ok(MonomialIdeal {
            nvars,
            generators: minimal.into_iter().collect(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            generators: BTreeSet::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    /// Minimal generators, by increasing degree then revlex-descending.
    pub fn generators(&self) -> Vec<Monomial> {
        let mut g: Vec<Monomial> = self.generators.iter().cloned().collect();
        g.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        g
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).max()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn has_generator_in_degree(&self, e: u32) -> bool {
        self.generators.iter().any(|g| g.degree() == e)
    }

    /// Degree-`e` piece of the ideal.
    pub fn piece(&self, e: u32) -> MonomialSpace {
        let mut cache = self.cache.lock().expect("cache lock");
        cache
            .entry(e)
            .or_insert_with(|| {
                Arc::new(MonomialSpace {
                    nvars: self.nvars,
                    degree: e,
                    monomials: monomials_of_degree(self.nvars, e)
                        .into_iter()
                        .filter(|m| self.contains(m))
                        .collect(),
                })
            })
            .as_ref()
            .clone()
    }

    /// Number of degree-`e` monomials in the ideal, or in the quotient when
    /// `quotient` is set.
    pub fn hilbert_function(&self, e: u32, quotient: bool) -> u64 {
        let inside = self.piece(e).len() as u64;
        if quotient {
            count_of_degree(self.nvars, e) - inside
        } else {
            inside
        }
    }

    /// Strong stability, checked on generator moves: every exchange of a
    /// generator must land back in the ideal.
    pub fn is_strongly_stable(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.borel_moves().all(|b| self.contains(&b)))
    }

    /// Smallest number of variables such that every minimal generator is
    /// divisible by one of them. Exhaustive over variable subsets.
    pub fn codimension(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Invalid("codimension of the zero ideal is undefined".into()));
        }
        if self.is_unit() {
            return Err(Error::Invalid("the unit ideal cuts out nothing".into()));
        }
        if self.nvars > 16 {
            return Err(Error::Size(format!("{} variables is too many for exhaustive cover search", self.nvars)));
        }
        let supports: Vec<u32> = self
            .generators
            .iter()
            .map(|g| g.support().fold(0u32, |acc, i| acc | (1 << (i - 1))))
            .collect();
        let best = (1u32..1 << self.nvars)
            .filter(|cover| supports.iter().all(|s| s & cover != 0))
            .map(u32::count_ones)
            .min()
            .expect("the set of all variables covers every generator");
        Ok(best as usize)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.generators().iter().map(|m| m.to_string()).collect();
        write!(f, "({})", items.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The smallest strongly stable monomial ideal containing `gens`.
pub fn borel_closure(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    let mut by_degree: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for g in gens {
        by_degree.entry(g.degree()).or_default().push(g);
    }
    let mut all = Vec::new();
    for (d, ms) in by_degree {
        let closed = MonomialSpace::new(nvars, d, ms)?.borel_closure();
        all.extend(closed.monomials);
    }
    MonomialIdeal::new(nvars, all)
}

/// Check that consecutive pieces satisfy `piece_e * <vars> ⊆ piece_{e+1}`.
fn check_ideal_pieces(pieces: &BTreeMap<u32, MonomialSpace>) -> Result<usize> {
    let Some((_, first)) = pieces.iter().next() else {
        return Err(Error::Empty("no pieces".into()));
    };
    let n = first.nvars;
    let mut prev: Option<&MonomialSpace> = None;
    for (&e, piece) in pieces {
        if piece.nvars != n || piece.degree != e {
            return Err(Error::NotAnIdeal(format!(
                "piece at degree {e} has degree {} in {} variables",
                piece.degree, piece.nvars
            )));
        }
        if let Some(p) = prev {
            if p.degree + 1 != e {
                return Err(Error::NotAnIdeal(format!(
                    "degrees {} and {e} are not consecutive",
                    p.degree
                )));
            }
            let up = p.times_variables();
            if let Some(m) = up.monomials.difference(&piece.monomials).next() {
                return Err(Error::NotAnIdeal(format!(
                    "{m} lies in the ideal but not in the degree-{e} piece"
                )));
            }
        }
        prev = Some(piece);
    }
    Ok(n)
}

/// Minimal generators of an ideal given degreewise: monomials of each piece
/// not divisible by anything in a lower piece.
pub fn minimal_generators(pieces: &BTreeMap<u32, MonomialSpace>) -> Result<MonomialIdeal> {
    let n = check_ideal_pieces(pieces)?;
    let mut gens: Vec<Monomial> = Vec::new();
    for piece in pieces.values() {
        for m in &piece.monomials {
            if !gens.iter().any(|g| g.divides(m)) {
                gens.push(m.clone());
            }
        }
    }
    MonomialIdeal::new(n, gens)
}

/// `J(T)`: the ideal in `n - 1` variables whose degree-`e` piece is
/// `(T : x_n^{d-e})` with `x_n` dropped for `e < d`, and the degree-`e`
/// piece of the ideal generated by `T`, with `x_n` set to zero, for `e >= d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JIdeal {
    /// Degree of the space `T` it was built from.
    pub source_degree: u32,
    /// Explicit pieces in degrees `0..=d`.
    pub pieces: BTreeMap<u32, MonomialSpace>,
    pub ideal: MonomialIdeal,
}

impl JIdeal {
    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn piece(&self, e: u32) -> MonomialSpace {
        match self.pieces.get(&e) {
            Some(p) => p.clone(),
            None => self.ideal.piece(e),
        }
    }

    /// Whether there is a minimal generator in the degree of `T`.
    pub fn has_generator_in_source_degree(&self) -> bool {
        self.ideal.has_generator_in_degree(self.source_degree)
    }
}

/// Build `J(T)_{x_n}` for a strongly stable space `T`.
pub fn build_j(t: &MonomialSpace) -> Result<JIdeal> {
    if t.nvars < 2 {
        return Err(Error::Dimension("J(T) needs at least two variables".into()));
    }
    if !t.is_strongly_stable() {
        return Err(Error::Precondition(format!("{t} is not strongly stable")));
    }
    let d = t.degree;
    let mut pieces = BTreeMap::new();
    for e in 0..d {
        let piece = t.colon_last_power(d - e)?.restrict(1)?;
        pieces.insert(e, piece);
    }
    pieces.insert(d, t.restrict(1)?);
    let ideal = minimal_generators(&pieces)?;
    Ok(JIdeal {
        source_degree: d,
        pieces,
        ideal,
    })
}

/// True iff the ideal given degreewise has no minimal generator in degree
/// `d`. Every piece must be strongly stable.
pub fn green_predicate(pieces: &BTreeMap<u32, MonomialSpace>, d: u32) -> Result<bool> {
    if let Some((e, _)) = pieces.iter().find(|(_, p)| !p.is_strongly_stable()) {
        return Err(Error::Precondition(format!(
            "piece in degree {e} is not strongly stable"
        )));
    }
    let ideal = minimal_generators(pieces)?;
    Ok(!ideal.has_generator_in_degree(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn space(n: usize, d: u32, ms: &[&[u32]]) -> MonomialSpace {
        MonomialSpace::new(n, d, ms.iter().map(|e| m(e))).unwrap()
    }

    fn staircase() -> MonomialSpace {
        space(3, 3, &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 0], &[2, 0, 1]])
    }

    #[test]
    fn stability_cases() {
        assert!(!space(3, 2, &[&[1, 1, 0]]).is_strongly_stable());
        assert!(staircase().is_strongly_stable());
        assert!(MonomialSpace::full(4, 3).is_strongly_stable());
    }

    #[test]
    fn closure_of_one_monomial() {
        let closed = borel_closure(3, [m(&[1, 2, 0])]).unwrap();
        assert_eq!(
            closed.piece(3),
            space(3, 3, &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 0]])
        );
        let stable = borel_closure(3, [m(&[3, 0, 0])]).unwrap();
        assert_eq!(stable.piece(3), space(3, 3, &[&[3, 0, 0]]));
    }

    #[test]
    fn closure_gives_staircase() {
        let closed = borel_closure(3, [m(&[2, 0, 1]), m(&[1, 2, 0])]).unwrap();
        assert_eq!(closed.piece(3), staircase());
        assert!(closed.is_strongly_stable());
    }

    #[test]
    fn j_of_staircase() {
        let j = build_j(&staircase()).unwrap();
        assert_eq!(j.ideal.generators(), vec![m(&[2, 0]), m(&[1, 2])]);
        assert!(j.ideal.has_generator_in_degree(3));
        assert!(!j.ideal.has_generator_in_degree(4));
        assert!(j.has_generator_in_source_degree());
    }

    #[test]
    fn j_of_multiples_of_x1() {
        let t = space(3, 2, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let j = build_j(&t).unwrap();
        assert_eq!(j.ideal.generators(), vec![m(&[1, 0])]);
        assert!(!j.has_generator_in_source_degree());
    }

    #[test]
    fn j_of_everything_is_the_unit_ideal() {
        // (S_d : x_n^d) contains 1, so the degree-0 piece is the whole field
        let j = build_j(&MonomialSpace::full(3, 3)).unwrap();
        assert!(j.ideal.is_unit());
        assert_eq!(j.piece(1), MonomialSpace::full(2, 1));
        assert_eq!(j.piece(3), MonomialSpace::full(2, 3));
    }

    #[test]
    fn j_requires_stability() {
        let t = space(3, 2, &[&[1, 1, 0]]);
        assert!(matches!(build_j(&t), Err(Error::Precondition(_))));
    }

    #[test]
    fn minimal_generators_cases() {
        let j = build_j(&staircase()).unwrap();
        let gens = minimal_generators(&j.pieces).unwrap();
        assert_eq!(gens, j.ideal);

        let principal = MonomialIdeal::new(2, [m(&[1, 0])]).unwrap();
        let pieces: BTreeMap<u32, MonomialSpace> =
            (1..=4).map(|e| (e, principal.piece(e))).collect();
        assert_eq!(minimal_generators(&pieces).unwrap().generators(), vec![m(&[1, 0])]);

        let full: BTreeMap<u32, MonomialSpace> =
            (1..=3).map(|e| (e, MonomialSpace::full(3, e))).collect();
        assert_eq!(
            minimal_generators(&full).unwrap().generators(),
            vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]
        );

        let mut broken = BTreeMap::new();
        broken.insert(1, space(2, 1, &[&[1, 0]]));
        broken.insert(2, space(2, 2, &[&[2, 0]]));
        assert!(matches!(minimal_generators(&broken), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn generator_degree_queries() {
        let j = build_j(&staircase()).unwrap();
        assert!(j.ideal.has_generator_in_degree(3));
        assert!(!j.ideal.has_generator_in_degree(4));
        assert!(!MonomialIdeal::zero(3).has_generator_in_degree(2));
    }

    #[test]
    fn hilbert_values() {
        let x1 = MonomialIdeal::new(2, [m(&[1, 0])]).unwrap();
        assert_eq!(x1.hilbert_function(3, false), 3);
        assert_eq!(x1.hilbert_function(3, true), 1);
        let zero = MonomialIdeal::zero(3);
        assert_eq!(zero.hilbert_function(2, false), 0);
        assert_eq!(zero.hilbert_function(2, true), 6);
        let j = MonomialIdeal::new(2, [m(&[2, 0]), m(&[1, 2])]).unwrap();
        assert_eq!(j.hilbert_function(4, false), 4);
        assert_eq!(j.hilbert_function(4, true), 1);
    }

    #[test]
    fn codimension_cases() {
        let j = MonomialIdeal::new(2, [m(&[2, 0]), m(&[1, 2])]).unwrap();
        assert_eq!(j.codimension(), Ok(1));
        let point = MonomialIdeal::new(2, [m(&[1, 0]), m(&[0, 1])]).unwrap();
        assert_eq!(point.codimension(), Ok(2));
        let product = MonomialIdeal::new(2, [m(&[1, 1])]).unwrap();
        assert_eq!(product.codimension(), Ok(1));
        assert!(MonomialIdeal::zero(2).codimension().is_err());
    }

    #[test]
    fn green_cases() {
        let i = MonomialIdeal::new(3, [m(&[2, 0, 0]), m(&[1, 1, 0])]).unwrap();
        let pieces: BTreeMap<u32, MonomialSpace> = (2..=4).map(|e| (e, i.piece(e))).collect();
        assert_eq!(green_predicate(&pieces, 3), Ok(true));

        let j = build_j(&staircase()).unwrap();
        assert_eq!(green_predicate(&j.pieces, 3), Ok(false));

        let full: BTreeMap<u32, MonomialSpace> =
            (1..=4).map(|e| (e, MonomialSpace::full(3, e))).collect();
        assert_eq!(green_predicate(&full, 2), Ok(true));
        assert_eq!(green_predicate(&full, 3), Ok(true));

        let mut unstable = BTreeMap::new();
        unstable.insert(2, space(3, 2, &[&[1, 1, 0]]));
        assert!(matches!(green_predicate(&unstable, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn minimality_enforced() {
        let i = MonomialIdeal::new(2, [m(&[1, 0]), m(&[2, 0]), m(&[1, 1])]).unwrap();
        assert_eq!(i.generators(), vec![m(&[1, 0])]);
    }
}
