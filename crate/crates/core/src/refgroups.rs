//! Concrete reference groups used as independent oracles for recognition:
//! Klein four-group, Z2 x D_N (dihedral as N-gon vertex permutations),
//! SL2 and PSL2 over Z4 by matrix enumeration, SL2(Z2), and the semidirect
//! products Z2^2 * SL2(Z4), Z2^2 * PSL2(Z4) (modular part acting through
//! reduction mod 2).
//!
//! Recognition maps an enumerated quotient onto a reference group by
//! extending a generator assignment over the whole Cayley graph and
//! verifying every edge, plus a random product sample.

use crate::group::QuotientGroup;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, HashMap};

/// A finite group given by an explicit multiplication table.
#[derive(Debug, Clone)]
pub struct ReferenceGroup {
    pub name: String,
    pub order: usize,
    mul_table: Vec<u16>,
    inv_table: Vec<u16>,
    id: u16,
    pub elem_names: Vec<String>,
    pub named_gens: Vec<(String, u16)>,
}

impl ReferenceGroup {
    fn from_elements<T, F, N>(name: &str, elems: Vec<T>, mul: F, namer: N, gens: Vec<(String, T)>) -> Self
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&T, &T) -> T,
        N: Fn(&T) -> String,
    {
        let order = elems.len();
        let index: HashMap<T, u16> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i as u16))
            .collect();
        let mut mul_table = vec![0u16; order * order];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let p = mul(a, b);
                mul_table[i * order + j] = *index.get(&p).expect("closed under multiplication");
            }
        }
        // identity: the unique e with e*x = x for all x
        let mut id = u16::MAX;
        'outer: for i in 0..order {
            for j in 0..order {
                if mul_table[i * order + j] != j as u16 {
                    continue 'outer;
                }
            }
            id = i as u16;
            break;
        }
        assert!(id != u16::MAX, "no identity found");
        let mut inv_table = vec![0u16; order];
        for i in 0..order {
            let mut found = false;
            for j in 0..order {
                if mul_table[i * order + j] == id {
                    inv_table[i] = j as u16;
                    found = true;
                    break;
                }
            }
            assert!(found, "element without inverse");
        }
        let elem_names = elems.iter().map(|e| namer(e)).collect();
        let named_gens = gens
            .into_iter()
            .map(|(l, e)| (l, *index.get(&e).expect("generator in group")))
            .collect();
        Self { name: name.into(), order, mul_table, inv_table, id, elem_names, named_gens }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv_table[a] as usize
    }

    pub fn id(&self) -> usize {
        self.id as usize
    }

    pub fn elem_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.id as usize {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn order_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.order {
            *h.entry(self.elem_order(a)).or_insert(0) += 1;
        }
        h
    }

    pub fn gen(&self, label: &str) -> Option<usize> {
        self.named_gens
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, e)| *e as usize)
    }
}

type Mat2 = [u8; 4]; // row-major [a, b, c, d] over Z_m

fn mat_mul(m: u8, x: &Mat2, y: &Mat2) -> Mat2 {
    [
        (x[0] * y[0] + x[1] * y[2]) % m,
        (x[0] * y[1] + x[1] * y[3]) % m,
        (x[2] * y[0] + x[3] * y[2]) % m,
        (x[2] * y[1] + x[3] * y[3]) % m,
    ]
}

fn mat_name(x: &Mat2) -> String {
    format!("[[{},{}],[{},{}]]", x[0], x[1], x[2], x[3])
}

fn sl2_elements(m: u8) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d + m * m - (b * c) % (m * m)) % m == 1 % m {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Canonical representative of {M, -M} over Z4: the lexicographically
/// smaller entry tuple.
fn psl4_rep(x: &Mat2) -> Mat2 {
    let neg = x.map(|e| (4 - e) % 4);
    if neg < *x { neg } else { *x }
}

pub fn trivial_group() -> ReferenceGroup {
    ReferenceGroup::from_elements(
        "trivial",
        vec![0u8],
        |_, _| 0u8,
        |_| "1".into(),
        vec![],
    )
}

pub fn klein_four() -> ReferenceGroup {
    let elems: Vec<(u8, u8)> = vec![(0, 0), (1, 0), (0, 1), (1, 1)];
    ReferenceGroup::from_elements(
        "Z2^2",
        elems,
        |a, b| ((a.0 ^ b.0), (a.1 ^ b.1)),
        |e| format!("({},{})", e.0, e.1),
        vec![("e1".into(), (1, 0)), ("e2".into(), (0, 1))],
    )
}

pub fn sl2_z2() -> ReferenceGroup {
    let elems = sl2_elements(2);
    assert_eq!(elems.len(), 6);
    ReferenceGroup::from_elements(
        "SL2(Z2)",
        elems,
        |a, b| mat_mul(2, a, b),
        mat_name,
        vec![("S".into(), [0, 1, 1, 0]), ("T".into(), [1, 0, 1, 1])],
    )
}

pub fn sl2_z4() -> ReferenceGroup {
    let elems = sl2_elements(4);
    assert_eq!(elems.len(), 48);
    ReferenceGroup::from_elements(
        "SL2(Z4)",
        elems,
        |a, b| mat_mul(4, a, b),
        mat_name,
        // S = [[0,-1],[1,0]], T* = [[1,0],[-1,1]] over Z4
        vec![("S".into(), [0, 3, 1, 0]), ("T*".into(), [1, 0, 3, 1])],
    )
}

pub fn psl2_z4() -> ReferenceGroup {
    let mut elems: Vec<Mat2> = sl2_elements(4).iter().map(psl4_rep).collect();
    elems.sort();
    elems.dedup();
    assert_eq!(elems.len(), 24);
    ReferenceGroup::from_elements(
        "PSL2(Z4)",
        elems,
        |a, b| psl4_rep(&mat_mul(4, a, b)),
        |e| format!("±{}", mat_name(e)),
        vec![("S".into(), psl4_rep(&[0, 3, 1, 0])), ("T*".into(), psl4_rep(&[1, 0, 3, 1]))],
    )
}

/// D_N realized as vertex permutations of a labeled N-gon.
fn dihedral_perms(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for r in 0..n {
        // rotation v -> v + r
        out.push((0..n).map(|v| ((v + r) % n) as u8).collect());
        // reflection v -> r - v
        out.push((0..n).map(|v| ((n + r - v) % n) as u8).collect());
    }
    out
}

pub fn z2_x_dihedral(n: usize) -> ReferenceGroup {
    let mut elems: Vec<(u8, Vec<u8>)> = Vec::new();
    for c in 0..2u8 {
        for p in dihedral_perms(n) {
            elems.push((c, p));
        }
    }
    let rot: Vec<u8> = (0..n).map(|v| ((v + 1) % n) as u8).collect();
    let refl: Vec<u8> = (0..n).map(|v| ((n - v) % n) as u8).collect();
    ReferenceGroup::from_elements(
        &format!("Z2 x D_{n}"),
        elems,
        |a, b| {
            // permutation composition a.1 after b.1
            let comp: Vec<u8> = (0..b.1.len()).map(|v| a.1[b.1[v] as usize]).collect();
            (a.0 ^ b.0, comp)
        },
        |e| format!("(c={}, {:?})", e.0, e.1),
        vec![
            ("theta".into(), (0, rot)),
            ("sigma".into(), (1, (0..n).map(|v| v as u8).collect())),
            ("iota".into(), (0, refl)),
        ],
    )
}

/// Z2^2 * SL2(Z4) (or * PSL2(Z4)): pairs (w, M) with
/// (w, M)(w', M') = (w + Mbar w', M M'), Mbar = M mod 2 acting on w'.
fn semidirect(name: &str, modular: &ReferenceGroup, mats: Vec<Mat2>) -> ReferenceGroup {
    // w encoded as 0..4: bits (w0, w1)
    let elems: Vec<(u8, u16)> = (0..4u8)
        .flat_map(|w| (0..modular.order as u16).map(move |m| (w, m)))
        .collect();
    let mats_for_action = mats.clone();
    let s = modular.gen("S").unwrap() as u16;
    let t = modular.gen("T*").unwrap() as u16;
    let modular_mul: Vec<u16> = (0..modular.order * modular.order)
        .map(|k| modular.mul_table[k])
        .collect();
    let order = modular.order;
    let name_of = modular.elem_names.clone();
    ReferenceGroup::from_elements(
        name,
        elems,
        move |a, b| {
            let mbar = &mats_for_action[a.1 as usize];
            let (w0, w1) = (b.0 & 1, (b.0 >> 1) & 1);
            // column action of M mod 2
            let v0 = (mbar[0] % 2) * w0 + (mbar[1] % 2) * w1;
            let v1 = (mbar[2] % 2) * w0 + (mbar[3] % 2) * w1;
            let acted = (v0 % 2) | ((v1 % 2) << 1);
            (a.0 ^ acted, modular_mul[a.1 as usize * order + b.1 as usize])
        },
        move |e| format!("(w={:02b}, {})", e.0, name_of[e.1 as usize]),
        vec![
            ("e1".into(), (1u8, modular_gen_id(modular))),
            ("e2".into(), (2u8, modular_gen_id(modular))),
            ("S".into(), (0u8, s)),
            ("T".into(), (0u8, t)),
        ],
    )
}

fn modular_gen_id(modular: &ReferenceGroup) -> u16 {
    modular.id
}

pub fn z22_star_sl2_z4() -> ReferenceGroup {
    let modular = sl2_z4();
    let mats = sl2_elements(4);
    semidirect("Z2^2 * SL2(Z4)", &modular, mats)
}

pub fn z22_star_psl2_z4() -> ReferenceGroup {
    let modular = psl2_z4();
    let mut mats: Vec<Mat2> = sl2_elements(4).iter().map(psl4_rep).collect();
    mats.sort();
    mats.dedup();
    semidirect("Z2^2 * PSL2(Z4)", &modular, mats)
}

/// Outcome of a successful recognition: the generator assignment and the
/// full element map (quotient coset -> reference element index).
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub gen_images: Vec<(String, String)>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn describe(&self) -> String {
        self.gen_images
            .iter()
            .map(|(g, img)| format!("{g} -> {img}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn quotient_order_histogram(q: &QuotientGroup) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for a in 0..q.order() as u32 {
        *h.entry(q.elem_order(a)).or_insert(0) += 1;
    }
    h
}

/// Extends a generator assignment to a full map by BFS over the quotient's
/// Cayley graph and verifies every edge; returns the map when it is a
/// bijective homomorphism.
fn extend_and_verify(
    q: &QuotientGroup,
    q_gens: &[u32],
    r: &ReferenceGroup,
    images: &[usize],
) -> Option<Vec<usize>> {
    let m = q.order();
    if m != r.order {
        return None;
    }
    let mut map: Vec<usize> = vec![usize::MAX; m];
    map[q.id() as usize] = r.id();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(q.id());
    while let Some(x) = queue.pop_front() {
        for (gi, &g) in q_gens.iter().enumerate() {
            let y = q.mul(x, g);
            let img = r.mul(map[x as usize], images[gi]);
            if map[y as usize] == usize::MAX {
                map[y as usize] = img;
                queue.push_back(y);
            } else if map[y as usize] != img {
                return None;
            }
        }
    }
    // generators must generate the whole quotient
    if map.iter().any(|&v| v == usize::MAX) {
        return None;
    }
    // full Cayley-edge verification
    for x in 0..m as u32 {
        for (gi, &g) in q_gens.iter().enumerate() {
            if map[q.mul(x, g) as usize] != r.mul(map[x as usize], images[gi]) {
                return None;
            }
        }
    }
    // bijectivity
    let mut seen = vec![false; m];
    for &v in &map {
        if seen[v] {
            return None;
        }
        seen[v] = true;
    }
    // random 200-pair product sample
    let mut rng = StdRng::seed_from_u64(0xC0DE);
    for _ in 0..200 {
        let a = rng.random_range(0..m) as u32;
        let b = rng.random_range(0..m) as u32;
        if map[q.mul(a, b) as usize] != r.mul(map[a as usize], map[b as usize]) {
            return None;
        }
    }
    Some(map)
}

/// Recognition against a reference group.
///
/// `q_gens` are labeled coset ids generating the quotient; when
/// `image_labels` is given the stated assignment is verified, otherwise all
/// order-compatible assignments are searched. Failure is a value (None).
pub fn recognize(
    q: &QuotientGroup,
    q_gens_labeled: &[(String, u32)],
    r: &ReferenceGroup,
    image_labels: Option<&[&str]>,
) -> Option<GroupHom> {
    if q.order() != r.order {
        return None;
    }
    // fast pre-filter: element-order histograms of isomorphic groups agree
    if quotient_order_histogram(q) != r.order_histogram() {
        return None;
    }
    let gen_labels: Vec<&str> = q_gens_labeled.iter().map(|(l, _)| l.as_str()).collect();
    let q_gens: Vec<u32> = q_gens_labeled.iter().map(|(_, c)| *c).collect();

    if let Some(imgs) = image_labels {
        let images: Vec<usize> = imgs
            .iter()
            .map(|l| r.gen(l).expect("unknown reference generator label"))
            .collect();
        let map = extend_and_verify(q, &q_gens, r, &images)?;
        return Some(hom_from(q, &gen_labels, r, &images, map));
    }

    // search: candidates restricted by element order
    let cand: Vec<Vec<usize>> = q_gens
        .iter()
        .map(|&g| {
            let o = q.elem_order(g);
            (0..r.order).filter(|&e| r.elem_order(e) == o).collect()
        })
        .collect();
    let mut images = vec![0usize; q_gens.len()];
    fn rec(
        k: usize,
        cand: &[Vec<usize>],
        images: &mut Vec<usize>,
        q: &QuotientGroup,
        q_gens: &[u32],
        r: &ReferenceGroup,
    ) -> Option<Vec<usize>> {
        if k == cand.len() {
            return extend_and_verify(q, q_gens, r, images);
        }
        for &c in &cand[k] {
            images[k] = c;
            if let Some(map) = rec(k + 1, cand, images, q, q_gens, r) {
                return Some(map);
            }
        }
        None
    }
    let map = rec(0, &cand, &mut images, q, &q_gens, r)?;
    Some(hom_from(q, &gen_labels, r, &images, map))
}

fn hom_from(
    _q: &QuotientGroup,
    gen_labels: &[&str],
    r: &ReferenceGroup,
    images: &[usize],
    map: Vec<usize>,
) -> GroupHom {
    let gen_images = gen_labels
        .iter()
        .zip(images)
        .map(|(l, &img)| (l.to_string(), r.elem_names[img].clone()))
        .collect();
    GroupHom { gen_images, map }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_orders() {
        assert_eq!(sl2_z2().order, 6);
        assert_eq!(sl2_z4().order, 48);
        assert_eq!(psl2_z4().order, 24);
        assert_eq!(klein_four().order, 4);
        assert_eq!(z2_x_dihedral(3).order, 12);
        assert_eq!(z22_star_sl2_z4().order, 192);
        assert_eq!(z22_star_psl2_z4().order, 96);
    }

    #[test]
    fn psl2z4_generator_relations() {
        // S^2 = (S T*)^3 = T*^4 = 1 in PSL2(Z4)
        let g = psl2_z4();
        let s = g.gen("S").unwrap();
        let t = g.gen("T*").unwrap();
        assert_eq!(g.mul(s, s), g.id());
        let st = g.mul(s, t);
        assert_eq!(g.mul(g.mul(st, st), st), g.id());
        assert_eq!(g.elem_order(t), 4);
    }

    #[test]
    fn dihedral_relations() {
        let g = z2_x_dihedral(5);
        let th = g.gen("theta").unwrap();
        let si = g.gen("sigma").unwrap();
        let io = g.gen("iota").unwrap();
        assert_eq!(g.elem_order(th), 5);
        assert_eq!(g.elem_order(si), 2);
        assert_eq!(g.elem_order(io), 2);
        // sigma central
        for x in 0..g.order {
            assert_eq!(g.mul(si, x), g.mul(x, si));
        }
        // iota theta iota = theta^-1
        assert_eq!(g.mul(g.mul(io, th), io), g.inv(th));
    }

    #[test]
    fn semidirect_action() {
        // S swaps e1, e2; T maps e1 -> e1 e2 and fixes e2.
        let g = z22_star_sl2_z4();
        let e1 = g.gen("e1").unwrap();
        let e2 = g.gen("e2").unwrap();
        let s = g.gen("S").unwrap();
        let t = g.gen("T").unwrap();
        let conj = |a: usize, b: usize| g.mul(g.mul(a, b), g.inv(a));
        assert_eq!(conj(s, e1), e2);
        assert_eq!(conj(s, e2), e1);
        assert_eq!(conj(t, e1), g.mul(e1, e2));
        assert_eq!(conj(t, e2), e2);
    }
}
