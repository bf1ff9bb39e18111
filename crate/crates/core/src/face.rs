use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex label. Labels within a complex are distinct but need not be contiguous.
pub type Vertex = u32;

/// A face: a sorted, duplicate-free set of vertices. The empty face has dimension -1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Builds a face from arbitrary vertices, rejecting repeated labels.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Face> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex { vertex: w[0] });
        }
        Ok(Face(vs))
    }

    /// Wraps a vector that the caller guarantees is strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Face {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    pub fn vertex(v: Vertex) -> Face {
        Face(vec![v])
    }

    /// The face `{lo, lo+1, .., hi-1}`.
    pub fn range(lo: Vertex, hi: Vertex) -> Face {
        Face((lo..hi).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Face(out)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn with_vertex(&self, v: Vertex) -> Face {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut vs = self.0.clone();
                vs.insert(pos, v);
                Face(vs)
            }
        }
    }

    pub fn without_vertex(&self, v: Vertex) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Codimension-one subfaces, in the order obtained by deleting position 0, 1, ...
    pub fn boundary(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |skip| {
            Face(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Every subset, including the empty face and the face itself.
    pub fn subsets(&self) -> Vec<Face> {
        let n = self.0.len();
        assert!(n < 31, "face too large for subset enumeration");
        (0u32..(1u32 << n))
            .map(|mask| {
                Face(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Subsets of the given size, in lexicographic order.
    pub fn subsets_of_size(&self, size: usize) -> Vec<Face> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(size);
        fn rec(
            items: &[Vertex],
            start: usize,
            size: usize,
            current: &mut Vec<Vertex>,
            out: &mut Vec<Face>,
        ) {
            if current.len() == size {
                out.push(Face(current.clone()));
                return;
            }
            let needed = size - current.len();
            for i in start..items.len() {
                if items.len() - i < needed {
                    break;
                }
                current.push(items[i]);
                rec(items, i + 1, size, current, out);
                current.pop();
            }
        }
        rec(&self.0, 0, size, &mut current, &mut out);
        out
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Face {
        let mut vs: Vec<Vertex> = self.0.iter().map(|&v| f(v)).collect();
        vs.sort_unstable();
        Face(vs)
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Parses `"0,1,2"`, `"{0,1,2}"`, `"0 1 2"` or the empty string.
impl FromStr for Face {
    type Err = Error;

    fn from_str(s: &str) -> Result<Face> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut vs = Vec::new();
        for token in trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v = token.parse::<Vertex>().map_err(|_| Error::Parse {
                line: 1,
                message: format!("'{token}' is not a non-negative integer vertex label"),
            })?;
            vs.push(v);
        }
        Face::new(vs)
    }
}

impl From<Vertex> for Face {
    fn from(v: Vertex) -> Face {
        Face::vertex(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(vs: &[Vertex]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    #[test]
    fn new_sorts_and_rejects_repeats() {
        assert_eq!(face(&[3, 1, 2]).vertices(), &[1, 2, 3]);
        assert_eq!(
            Face::new([1, 1, 2]),
            Err(Error::RepeatedVertex { vertex: 1 })
        );
        assert_eq!(Face::empty().dim(), -1);
    }

    #[test]
    fn set_operations() {
        let a = face(&[0, 2, 4]);
        let b = face(&[2, 3]);
        assert_eq!(a.union(&b), face(&[0, 2, 3, 4]));
        assert_eq!(a.difference(&b), face(&[0, 4]));
        assert_eq!(a.intersection(&b), face(&[2]));
        assert!(face(&[0, 4]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(Face::empty().is_subset(&a));
        assert!(face(&[1, 5]).is_disjoint(&a));
        assert!(!b.is_disjoint(&a));
    }

    #[test]
    fn boundary_and_subsets() {
        let t = face(&[0, 1, 2]);
        let bd: Vec<Face> = t.boundary().collect();
        assert_eq!(bd, vec![face(&[1, 2]), face(&[0, 2]), face(&[0, 1])]);
        assert_eq!(t.subsets().len(), 8);
        assert_eq!(t.subsets_of_size(2).len(), 3);
        assert_eq!(t.subsets_of_size(0), vec![Face::empty()]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("0,1,2".parse::<Face>().unwrap(), face(&[0, 1, 2]));
        assert_eq!("{2, 0}".parse::<Face>().unwrap(), face(&[0, 2]));
        assert_eq!("".parse::<Face>().unwrap(), Face::empty());
        assert!("a,b".parse::<Face>().is_err());
        assert_eq!(face(&[4, 5]).to_string(), "{4,5}");
    }
}
