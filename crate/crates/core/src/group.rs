//! Generic finite-group machinery over exactly-comparable monomial maps:
//! closure, center, subgroups, normalizers, transporters, quotients, word
//! evaluation and presentation checks.
//!
//! Everything is brute force on enumerated element sets; the largest group
//! handled is of order 96 * 6^3 = 20736.

use crate::cyclo::MonomialMap;
use crate::error::{CpmError, Result};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

/// Exhaustive pairwise well-definedness in quotients is quadratic; above
/// this order the (equivalent) two-sided coset check alone is used.
const PAIRWISE_QUOTIENT_LIMIT: usize = 3000;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    /// Sorted canonical elements; index 0 is not necessarily the identity.
    pub elements: Vec<MonomialMap>,
    pub index: HashMap<MonomialMap, u32>,
    pub generators: Vec<(String, MonomialMap)>,
    pub n: u32,
}

impl FiniteGroup {
    /// Breadth-first closure of the generators under composition (the
    /// generator set is augmented with inverses, so the result is closed
    /// under inversion as well). Aborts when the cap is exceeded.
    pub fn closure(generators: Vec<(String, MonomialMap)>, cap: usize) -> Result<Self> {
        assert!(!generators.is_empty(), "empty generator list");
        let n = generators[0].1.n;
        for (_, g) in &generators {
            if g.n != n {
                return Err(CpmError::LevelMismatch(n, g.n));
            }
        }
        let mut multipliers: Vec<MonomialMap> = Vec::new();
        for (_, g) in &generators {
            if !multipliers.contains(g) {
                multipliers.push(*g);
            }
            let gi = g.inverse();
            if !multipliers.contains(&gi) {
                multipliers.push(gi);
            }
        }

        let id = MonomialMap::identity(n);
        let mut seen: HashSet<MonomialMap> = HashSet::new();
        let mut queue: VecDeque<MonomialMap> = VecDeque::new();
        seen.insert(id);
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for m in &multipliers {
                let y = x.compose(m)?;
                if seen.insert(y) {
                    if seen.len() > cap {
                        return Err(CpmError::ClosureOverflow { cap, reached: seen.len() });
                    }
                    queue.push_back(y);
                }
            }
        }

        let mut elements: Vec<MonomialMap> = seen.into_iter().collect();
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (*g, i as u32))
            .collect();
        Ok(Self { elements, index, generators, n })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &MonomialMap) -> bool {
        self.index.contains_key(g)
    }

    pub fn idx(&self, g: &MonomialMap) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn generator(&self, label: &str) -> Result<MonomialMap> {
        self.generators
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, g)| *g)
            .ok_or_else(|| CpmError::UnknownLabel(label.to_string()))
    }

    /// Evaluates a word over the generator labels, e.g. "u1 u2^-1 U^2".
    pub fn eval(&self, word: &Word) -> Result<MonomialMap> {
        let mut acc = MonomialMap::identity(self.n);
        for (label, exp) in &word.0 {
            let g = self.generator(label)?;
            acc = acc.compose(&g.pow(*exp))?;
        }
        Ok(acc)
    }

    /// True iff every relation word evaluates to the identity.
    pub fn verify_presentation(&self, relations: &[Word]) -> Result<bool> {
        for w in relations {
            if !self.eval(w)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The center, computed from commutation with the generators and then
    /// independently re-checked against every element.
    pub fn center(&self) -> Subgroup {
        let gens: Vec<MonomialMap> = self.generators.iter().map(|(_, g)| *g).collect();
        let mut elems: Vec<MonomialMap> = self
            .elements
            .iter()
            .copied()
            .filter(|z| {
                gens.iter().all(|g| {
                    z.compose(g).unwrap() == g.compose(z).unwrap()
                })
            })
            .collect();
        // independent re-check against the entire group
        elems.retain(|z| {
            self.elements
                .iter()
                .all(|g| z.compose(g).unwrap() == g.compose(z).unwrap())
        });
        Subgroup::from_elements(elems)
    }

    /// Subgroup generated by the given elements (must lie in the group).
    pub fn subgroup(&self, gens: &[MonomialMap]) -> Result<Subgroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(CpmError::Invalid(format!("generator {g} is not in the group")));
            }
        }
        let labeled = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("s{i}"), *g))
            .collect();
        let sub = FiniteGroup::closure(labeled, self.order())?;
        Ok(Subgroup::from_elements(sub.elements))
    }

    /// Brute-force normalizer of H in this group.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|g| conjugate_set_eq(g, h, h))
            .collect();
        Subgroup::from_elements(elems)
    }

    /// Transporter set {g | g H g^-1 = H'}, returned as a left coset
    /// (t, N(H)) of the normalizer, or None when empty.
    pub fn transporter(&self, h: &Subgroup, h_prime: &Subgroup) -> Option<(MonomialMap, Subgroup)> {
        let mut members: Vec<MonomialMap> = self
            .elements
            .iter()
            .copied()
            .filter(|g| conjugate_set_eq(g, h, h_prime))
            .collect();
        members.sort();
        let t = *members.first()?;
        let normalizer = self.normalizer(h);
        // sanity: the transporter is exactly t * N(H)
        debug_assert_eq!(members.len(), normalizer.order());
        Some((t, normalizer))
    }

    /// All elements commuting check helper used by verification suites.
    pub fn is_normal(&self, k: &Subgroup) -> std::result::Result<(), MonomialMap> {
        for g in &self.elements {
            let gi = g.inverse();
            for h in &k.elements {
                let c = g.compose(h).unwrap().compose(&gi).unwrap();
                if !k.contains(&c) {
                    return Err(*g);
                }
            }
        }
        Ok(())
    }

    /// Quotient by a normal subgroup, with verified coset structure.
    pub fn quotient(&self, k: &Subgroup) -> Result<QuotientGroup> {
        if let Err(witness) = self.is_normal(k) {
            return Err(CpmError::NotNormal { witness: witness.to_string() });
        }
        QuotientGroup::new(self, k)
    }
}

fn conjugate_set_eq(g: &MonomialMap, h: &Subgroup, target: &Subgroup) -> bool {
    if h.order() != target.order() {
        return false;
    }
    let gi = g.inverse();
    h.elements.iter().all(|x| {
        let c = g.compose(x).unwrap().compose(&gi).unwrap();
        target.contains(&c)
    })
}

/// A subgroup as an enumerated, closed element set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub elements: Vec<MonomialMap>,
    set: HashSet<MonomialMap>,
}

impl Subgroup {
    pub fn from_elements(mut elements: Vec<MonomialMap>) -> Self {
        elements.sort();
        elements.dedup();
        let set = elements.iter().copied().collect();
        Self { elements, set }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &MonomialMap) -> bool {
        self.set.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn set_eq(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|a| {
            self.elements
                .iter()
                .all(|b| a.compose(b).unwrap() == b.compose(a).unwrap())
        })
    }

    /// Left coset t * H as a sorted element list.
    pub fn left_coset(&self, t: &MonomialMap) -> Vec<MonomialMap> {
        let mut coset: Vec<MonomialMap> =
            self.elements.iter().map(|h| t.compose(h).unwrap()).collect();
        coset.sort();
        coset
    }
}

/// Quotient group G/K with cosets indexed by canonical (minimal) representative.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    /// Coset index of every parent element (indexed like parent.elements).
    pub coset_of: Vec<u32>,
    /// Canonical representative of each coset.
    pub reps: Vec<MonomialMap>,
    /// Classes of the parent's labeled generators.
    pub generators: Vec<(String, u32)>,
    pub parent_order: usize,
    pub kernel_order: usize,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
    id_coset: u32,
}

impl QuotientGroup {
    fn new(g: &FiniteGroup, k: &Subgroup) -> Result<Self> {
        let order = g.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps: Vec<MonomialMap> = Vec::new();
        // elements are sorted, so scanning in order yields minimal reps
        for (i, x) in g.elements.iter().enumerate() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(*x);
            for h in &k.elements {
                let y = x.compose(h).unwrap();
                let yi = g.idx(&y).ok_or_else(|| {
                    CpmError::Invalid("subgroup element leads outside the group".into())
                })? as usize;
                if coset_of[yi] != u32::MAX && coset_of[yi] != c {
                    return Err(CpmError::Invalid("coset partition clash".into()));
                }
                coset_of[yi] = c;
            }
        }
        // partition covers the parent exactly once
        if reps.len() * k.order() != order || coset_of.iter().any(|&c| c == u32::MAX) {
            return Err(CpmError::Invalid("cosets do not partition the group".into()));
        }

        // two-sided coset check: for every g, h in K the products g*h and
        // h*g stay in the coset of g (equivalent to normality of K).
        for (i, x) in g.elements.iter().enumerate() {
            for h in &k.elements {
                let r = g.idx(&x.compose(h).unwrap()).unwrap() as usize;
                let l = g.idx(&h.compose(x).unwrap()).unwrap() as usize;
                if coset_of[r] != coset_of[i] || coset_of[l] != coset_of[i] {
                    return Err(CpmError::Invalid("cosets are not two-sided".into()));
                }
            }
        }

        let m = reps.len();
        let mut mul_table = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                let prod = reps[a].compose(&reps[b]).unwrap();
                mul_table[a * m + b] = coset_of[g.idx(&prod).unwrap() as usize];
            }
        }
        // exhaustive pairwise well-definedness at small orders
        if order <= PAIRWISE_QUOTIENT_LIMIT {
            for (i, x) in g.elements.iter().enumerate() {
                for (j, y) in g.elements.iter().enumerate() {
                    let p = g.idx(&x.compose(y).unwrap()).unwrap() as usize;
                    let expect = mul_table[coset_of[i] as usize * m + coset_of[j] as usize];
                    if coset_of[p] != expect {
                        return Err(CpmError::Invalid("coset multiplication ill-defined".into()));
                    }
                }
            }
        }

        let id_coset = coset_of[g.idx(&MonomialMap::identity(g.n)).unwrap() as usize];
        let mut inv_table = vec![0u32; m];
        for a in 0..m {
            let inv = reps[a].inverse();
            inv_table[a] = coset_of[g.idx(&inv).unwrap() as usize];
        }
        let generators = g
            .generators
            .iter()
            .map(|(l, ge)| (l.clone(), coset_of[g.idx(ge).unwrap() as usize]))
            .collect();
        Ok(Self {
            coset_of,
            reps,
            generators,
            parent_order: order,
            kernel_order: k.order(),
            mul_table,
            inv_table,
            id_coset,
        })
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[a as usize * self.reps.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv_table[a as usize]
    }

    pub fn id(&self) -> u32 {
        self.id_coset
    }

    pub fn elem_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.id_coset {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Coset of an arbitrary parent element.
    pub fn class_of(&self, g: &FiniteGroup, x: &MonomialMap) -> Option<u32> {
        g.idx(x).map(|i| self.coset_of[i as usize])
    }
}

/// A word over generator labels with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<(String, i64)>);

impl Word {
    /// Parses "u1 u2^-1 U^2" style strings.
    pub fn parse(s: &str) -> Self {
        let mut items = Vec::new();
        for tok in s.split_whitespace() {
            if let Some((label, exp)) = tok.split_once('^') {
                items.push((label.to_string(), exp.parse::<i64>().expect("integer exponent")));
            } else {
                items.push((tok.to_string(), 1));
            }
        }
        Word(items)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }
}

/// Formats an element list (used in witnesses).
pub fn describe_elements(elems: &[MonomialMap], limit: usize) -> String {
    let mut s = String::new();
    for (i, e) in elems.iter().take(limit).enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{e}");
    }
    if elems.len() > limit {
        let _ = write!(s, "; ... ({} total)", elems.len());
    }
    s
}
