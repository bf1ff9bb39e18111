//! Combinatorial isomorphism and join decomposition.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// Default vertex bound for [`are_isomorphic`].
pub const DEFAULT_ISO_LIMIT: usize = 32;

/// Outcome of an isomorphism search: the vertex bijection when one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub mapping: Option<BTreeMap<Vertex, Vertex>>,
}

impl IsoCertificate {
    pub fn is_isomorphic(&self) -> bool {
        self.mapping.is_some()
    }
}

/// Searches for a vertex bijection carrying the facets of `a` onto the facets of `b`.
pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<IsoCertificate> {
    are_isomorphic_with_limit(a, b, DEFAULT_ISO_LIMIT)
}

pub fn are_isomorphic_with_limit(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    limit: usize,
) -> Result<IsoCertificate> {
    let limit = limit.min(64);
    let size = a.num_vertices().max(b.num_vertices());
    if size > limit {
        return Err(Error::TooLarge {
            what: "vertex count for isomorphism search",
            size,
            limit,
        });
    }
    let none = IsoCertificate { mapping: None };
    if a.f_vector() != b.f_vector() || a.num_facets() != b.num_facets() {
        return Ok(none);
    }
    let sa = Side::new(a);
    let sb = Side::new(b);
    let (ca, cb) = refine(&sa, &sb, a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return Ok(none);
    }
    let mapping = Search::new(&sa, &sb, &ca, &cb).run();
    let Some(mapping) = mapping else {
        return Ok(none);
    };
    let mapping: BTreeMap<Vertex, Vertex> = mapping
        .iter()
        .enumerate()
        .map(|(i, &j)| (sa.labels[i], sb.labels[j]))
        .collect();
    verify_mapping(a, b, &mapping)?;
    Ok(IsoCertificate {
        mapping: Some(mapping),
    })
}

/// Checks that `mapping` is a bijection inducing a facet bijection.
pub fn verify_mapping(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    mapping: &BTreeMap<Vertex, Vertex>,
) -> Result<()> {
    let image: HashSet<Vertex> = mapping.values().copied().collect();
    let domain_ok = a.vertices().iter().all(|v| mapping.contains_key(v))
        && mapping.len() == a.num_vertices();
    if !domain_ok || image.len() != b.num_vertices() || !b.vertices().iter().all(|v| image.contains(v)) {
        return Err(Error::Precondition("mapping is not a vertex bijection".into()));
    }
    let targets: HashSet<&Face> = b.facets().iter().collect();
    let mut hit: HashSet<Face> = HashSet::new();
    for f in a.facets() {
        let g = f.map(|v| mapping[&v]);
        if !targets.contains(&g) || !hit.insert(g) {
            return Err(Error::Precondition(format!(
                "mapping does not carry facet {f} to a facet"
            )));
        }
    }
    if hit.len() != b.facets().len() {
        return Err(Error::Precondition("mapping misses facets".into()));
    }
    Ok(())
}

/// Dense, index-based view of one complex.
struct Side {
    labels: Vec<Vertex>,
    adjacency: Vec<u64>,
    /// Facets as vertex-index bitmasks.
    facets: HashSet<u64>,
    facet_list: Vec<u64>,
}

impl Side {
    fn new(c: &SimplicialComplex) -> Side {
        let labels = c.vertices().to_vec();
        let index: HashMap<Vertex, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mask = |f: &Face| f.vertices().iter().fold(0u64, |m, v| m | 1 << index[v]);
        let mut adjacency = vec![0u64; labels.len()];
        for e in c.edges() {
            let (x, y) = (index[&e.vertices()[0]], index[&e.vertices()[1]]);
            adjacency[x] |= 1 << y;
            adjacency[y] |= 1 << x;
        }
        let facet_list: Vec<u64> = c.facets().iter().filter(|f| !f.is_empty()).map(mask).collect();
        Side {
            labels,
            adjacency,
            facets: facet_list.iter().copied().collect(),
            facet_list,
        }
    }
}

/// Colour refinement run jointly on both complexes so colour ids are comparable.
fn refine(
    sa: &Side,
    sb: &Side,
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> (Vec<usize>, Vec<usize>) {
    let initial = |s: &Side, c: &SimplicialComplex| -> Vec<(usize, usize, Vec<i64>)> {
        s.labels
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let facets = s.facet_list.iter().filter(|&&m| m & (1 << i) != 0).count();
                let link = c.link(&Face::vertex(v)).expect("vertex is a face").f_vector().0;
                (s.adjacency[i].count_ones() as usize, facets, link)
            })
            .collect()
    };
    let ia = initial(sa, a);
    let ib = initial(sb, b);
    let mut dict: BTreeMap<&(usize, usize, Vec<i64>), usize> = BTreeMap::new();
    for sig in ia.iter().chain(ib.iter()) {
        let n = dict.len();
        dict.entry(sig).or_insert(n);
    }
    let mut ca: Vec<usize> = ia.iter().map(|s| dict[s]).collect();
    let mut cb: Vec<usize> = ib.iter().map(|s| dict[s]).collect();
    loop {
        let step = |s: &Side, col: &[usize]| -> Vec<(usize, Vec<usize>)> {
            (0..s.labels.len())
                .map(|i| {
                    let mut nb: Vec<usize> = (0..s.labels.len())
                        .filter(|&j| s.adjacency[i] & (1 << j) != 0)
                        .map(|j| col[j])
                        .collect();
                    nb.sort_unstable();
                    (col[i], nb)
                })
                .collect()
        };
        let na = step(sa, &ca);
        let nb = step(sb, &cb);
        let mut dict: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in na.iter().chain(nb.iter()) {
            let n = dict.len();
            dict.entry(sig).or_insert(n);
        }
        let next_a: Vec<usize> = na.iter().map(|s| dict[s]).collect();
        let next_b: Vec<usize> = nb.iter().map(|s| dict[s]).collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        let stable = classes(&next_a) + classes(&next_b) == classes(&ca) + classes(&cb);
        ca = next_a;
        cb = next_b;
        if stable {
            return (ca, cb);
        }
    }
}

struct Search<'a> {
    sa: &'a Side,
    sb: &'a Side,
    ca: &'a [usize],
    cb: &'a [usize],
    order: Vec<usize>,
    /// Facets of `a` whose last vertex in `order` is at that position.
    close: Vec<Vec<u64>>,
}

impl<'a> Search<'a> {
    fn new(sa: &'a Side, sb: &'a Side, ca: &'a [usize], cb: &'a [usize]) -> Self {
        let n = sa.labels.len();
        let class_size = |c: usize| ca.iter().filter(|&&x| x == c).count();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let next = (0..n)
                .filter(|&i| placed & (1 << i) == 0)
                .min_by_key(|&i| {
                    let linked = (sa.adjacency[i] & placed).count_ones();
                    (std::cmp::Reverse(linked), class_size(ca[i]), i)
                })
                .unwrap();
            placed |= 1 << next;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        let mut close = vec![Vec::new(); n];
        for &m in &sa.facet_list {
            let last = (0..n).filter(|&i| m & (1 << i) != 0).map(|i| position[i]).max();
            if let Some(p) = last {
                close[p].push(m);
            }
        }
        Search {
            sa,
            sb,
            ca,
            cb,
            order,
            close,
        }
    }

    fn run(&self) -> Option<Vec<usize>> {
        let n = self.sa.labels.len();
        let mut map = vec![usize::MAX; n];
        if self.extend(0, &mut map, 0) {
            Some(map)
        } else {
            None
        }
    }

    fn extend(&self, depth: usize, map: &mut Vec<usize>, used: u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for j in 0..self.sb.labels.len() {
            if used & (1 << j) != 0 || self.cb[j] != self.ca[i] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&k| {
                let ea = self.sa.adjacency[i] & (1 << k) != 0;
                let eb = self.sb.adjacency[j] & (1 << map[k]) != 0;
                ea == eb
            });
            if !consistent {
                continue;
            }
            map[i] = j;
            let facets_ok = self.close[depth].iter().all(|&m| {
                let image = (0..self.sa.labels.len())
                    .filter(|&x| m & (1 << x) != 0)
                    .fold(0u64, |acc, x| acc | 1 << map[x]);
                self.sb.facets.contains(&image)
            });
            if facets_ok && self.extend(depth + 1, map, used | 1 << j) {
                return true;
            }
            map[i] = usize::MAX;
        }
        false
    }
}

/// Finds `V = A ⊔ B` with both parts nonempty and `Δ = Δ[A] ∗ Δ[B]`. Among valid
/// partitions the one with the smallest `A`, then lexicographically first, is returned.
pub fn detect_join(c: &SimplicialComplex) -> Option<(Face, Face)> {
    let n = c.num_vertices();
    if n < 2 {
        return None;
    }
    let components = non_edge_components(c);
    let k = components.len();
    if !(2..=24).contains(&k) {
        return None;
    }
    let mut candidates: Vec<(usize, Face)> = Vec::new();
    for mask in 1u32..(1u32 << k) - 1 {
        let a: Vec<Vertex> = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .flat_map(|i| components[i].iter().copied())
            .collect();
        let a = Face::new(a).expect("components are disjoint");
        if a.len() * 2 > n || (a.len() * 2 == n && !a.contains(c.vertices()[0])) {
            continue;
        }
        candidates.push((a.len(), a));
    }
    candidates.sort();
    let all = Face::new(c.vertices().iter().copied()).expect("vertex set");
    for (_, a) in candidates {
        let b = all.difference(&a);
        if is_join_partition(c, &a, &b) {
            return Some((a, b));
        }
    }
    None
}

/// `Δ = Δ[A] ∗ Δ[B]`, compared facet by facet.
pub fn is_join_partition(c: &SimplicialComplex, a: &Face, b: &Face) -> bool {
    let ra = c.restriction(a);
    let rb = c.restriction(b);
    match ra.join_disjoint(&rb) {
        Ok(j) => j == *c,
        Err(_) => false,
    }
}

/// Vertex sets of the join-irreducible factors, sorted by smallest vertex.
pub fn join_factors(c: &SimplicialComplex) -> Vec<Face> {
    match detect_join(c) {
        None => vec![Face::new(c.vertices().iter().copied()).expect("vertex set")],
        Some((a, b)) => {
            let mut out = join_factors(&c.restriction(&a));
            out.extend(join_factors(&c.restriction(&b)));
            out.sort();
            out
        }
    }
}

fn non_edge_components(c: &SimplicialComplex) -> Vec<Vec<Vertex>> {
    let vs = c.vertices();
    let edges: HashSet<&Face> = c.edges().iter().collect();
    let mut comp: Vec<usize> = (0..vs.len()).collect();
    fn root(comp: &mut [usize], mut i: usize) -> usize {
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let e = Face::from_sorted(vec![vs[i], vs[j]]);
            if !edges.contains(&e) {
                let (ri, rj) = (root(&mut comp, i), root(&mut comp, j));
                comp[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for i in 0..vs.len() {
        let r = root(&mut comp, i);
        groups.entry(r).or_default().push(vs[i]);
    }
    groups.into_values().collect()
}
