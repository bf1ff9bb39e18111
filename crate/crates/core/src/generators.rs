//! Deterministic constructors for the complex families used throughout the crate, catalog
//! entries with re-verified expected invariants, and fixture loading.
//!
//! Labeling conventions:
//! - `simplex(d)` and `simplex_boundary(d)` use vertices `0..=d`.
//! - `cycle(n)` uses `0..n` with edges `{i, i+1 mod n}`.
//! - joins place the left factor first and shift the right factor past its largest label.
//! - `cross_polytope_boundary(d)` pairs `{2k, 2k+1}` as antipodes.
//! - `stacked_sphere(d, n)` starts from `∂σ^d` on `0..=d` and stacks vertex `m` onto the
//!   facet created last in the previous step.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::homology::{self, Field};
use crate::io;
use crate::retriangulate;

/// Labels attached to catalog entries. Every tag except `Fixture` and `Octahedral` is a
/// checkable property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Rational homology sphere.
    Sphere,
    /// Homology manifold (every vertex link is a homology sphere).
    Manifold,
    /// Normal pseudomanifold.
    Pseudomanifold,
    /// Pure with no missing facets.
    Prime,
    /// Homology sphere with `g_2 = 0`.
    Stacked,
    /// Member of the `g_2 = 1` family.
    G2One,
    /// Member of the `g_2 = 2` catalog.
    G2Two,
    /// The boundary of the 4-dimensional cross-polytope.
    Octahedral,
    /// Betti numbers over `Q` and `F_2` differ.
    Torsion,
    /// Loaded from a data file.
    Fixture,
}

impl Tag {
    pub const ALL: [Tag; 10] = [
        Tag::Sphere,
        Tag::Manifold,
        Tag::Pseudomanifold,
        Tag::Prime,
        Tag::Stacked,
        Tag::G2One,
        Tag::G2Two,
        Tag::Octahedral,
        Tag::Torsion,
        Tag::Fixture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Sphere => "sphere",
            Tag::Manifold => "manifold",
            Tag::Pseudomanifold => "pseudomanifold",
            Tag::Prime => "prime",
            Tag::Stacked => "stacked",
            Tag::G2One => "g2-one",
            Tag::G2Two => "g2-two",
            Tag::Octahedral => "octahedral",
            Tag::Torsion => "torsion",
            Tag::Fixture => "fixture",
        }
    }

    /// Recomputes the property named by the tag; `None` for informational tags.
    pub fn holds(self, c: &SimplicialComplex) -> Option<bool> {
        Some(match self {
            Tag::Sphere => homology::is_homology_sphere(c, Field::Rational).is_ok(),
            Tag::Manifold => homology::is_homology_manifold(c, Field::Rational).is_ok(),
            Tag::Pseudomanifold => homology::is_normal_pseudomanifold(c).is_ok(),
            Tag::Prime => c.is_prime(),
            Tag::Stacked => c.g2_from_counts() == 0 && Tag::Sphere.holds(c) == Some(true),
            Tag::G2One => c.g2_from_counts() == 1,
            Tag::G2Two => c.g2_from_counts() == 2,
            Tag::Torsion => {
                let f2 = Field::prime(2).expect("2 is prime");
                homology::betti(c, Field::Rational).reduced != homology::betti(c, f2).reduced
            }
            Tag::Octahedral | Tag::Fixture => return None,
        })
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tag> {
        Tag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown tag {s:?}")))
    }
}

/// Invariants a catalog entry promises.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// `f_{-1}, f_0, …`.
    pub f_vector: Option<Vec<i64>>,
    pub g2: Option<i64>,
    pub tags: BTreeSet<Tag>,
}

impl Expected {
    pub fn tags(tags: &[Tag]) -> Expected {
        Expected {
            tags: tags.iter().copied().collect(),
            ..Expected::default()
        }
    }

    pub fn with_g2(mut self, g2: i64) -> Expected {
        self.g2 = Some(g2);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<i64>,
    #[serde(skip)]
    pub complex: SimplicialComplex,
    pub expected: Expected,
}

impl CatalogEntry {
    /// Builds an entry after recomputing every expected invariant.
    pub fn new(
        name: impl Into<String>,
        parameters: Vec<i64>,
        complex: SimplicialComplex,
        expected: Expected,
    ) -> Result<CatalogEntry> {
        let entry = CatalogEntry {
            name: name.into(),
            parameters,
            complex,
            expected,
        };
        entry.verify()?;
        Ok(entry)
    }

    /// Recomputes the expected invariants.
    pub fn verify(&self) -> Result<()> {
        let fail = |message: String| Error::Expectation {
            entry: self.name.clone(),
            message,
        };
        if let Some(f) = &self.expected.f_vector {
            let found = self.complex.f_vector().0;
            if *f != found {
                return Err(fail(format!("f-vector {found:?}, expected {f:?}")));
            }
        }
        if let Some(g2) = self.expected.g2 {
            let found = self.complex.g2_from_counts();
            if found != g2 {
                return Err(fail(format!("g2 = {found}, expected {g2}")));
            }
        }
        for &tag in &self.expected.tags {
            if tag.holds(&self.complex) == Some(false) {
                return Err(fail(format!("property {tag} does not hold")));
            }
        }
        Ok(())
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.expected.tags.contains(&tag)
    }

    /// `dim + 1`.
    pub fn d(&self) -> usize {
        (self.complex.dim() + 1).max(0) as usize
    }
}

fn out_of_range(what: &str) -> Error {
    Error::InvalidParameter(what.to_string())
}

/// The full simplex `σ^d` on `0..=d`.
pub fn simplex(d: usize) -> SimplicialComplex {
    SimplicialComplex::simplex(Face::range(0, d as Vertex + 1))
}

/// `∂σ^d` on `0..=d`.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex> {
    if d < 1 {
        return Err(out_of_range("simplex boundary needs d >= 1"));
    }
    Ok(SimplicialComplex::from_faces(Face::range(0, d as Vertex + 1).boundary()))
}

/// The `n`-cycle on `0..n`.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(out_of_range("cycle needs n >= 3"));
    }
    let n = n as Vertex;
    SimplicialComplex::from_facets((0..n).map(|i| vec![i, (i + 1) % n]))
}

/// Boundary of the `d`-dimensional cross-polytope.
pub fn cross_polytope_boundary(d: usize) -> Result<SimplicialComplex> {
    if d < 1 {
        return Err(out_of_range("cross-polytope needs d >= 1"));
    }
    let pair = simplex_boundary(1)?;
    let mut c = pair.clone();
    for _ in 1..d {
        c = c.join(&pair);
    }
    Ok(c)
}

/// Stacked `(d-1)`-sphere on `n` vertices.
pub fn stacked_sphere(d: usize, n: usize) -> Result<SimplicialComplex> {
    if d < 1 || n < d + 1 {
        return Err(out_of_range("stacked sphere needs d >= 1 and n >= d + 1"));
    }
    let mut c = simplex_boundary(d)?;
    let mut last = c.facets().last().expect("nonempty").clone();
    for _ in d + 1..n {
        let apex = c.fresh_label();
        c = c.stack_over_facet(&last)?;
        last = last.without_vertex(last.vertices()[0]).with_vertex(apex);
    }
    Ok(c)
}

/// Stacked `(d-1)`-sphere on `n` vertices in which every stacking happens around the ridge
/// `{0, …, d-2}`: the boundary of `σ^{d-2} ∗ P` for the path `P = (d-1, …, n-1)`.
pub fn ridge_stacked_sphere(d: usize, n: usize) -> Result<SimplicialComplex> {
    if d < 2 || n < d + 1 {
        return Err(out_of_range("ridge-stacked sphere needs d >= 2 and n >= d + 1"));
    }
    let tau = Face::range(0, d as Vertex - 1);
    let (first, last) = (d as Vertex - 1, n as Vertex - 1);
    let mut facets: Vec<Face> = Vec::new();
    for ridge in tau.boundary() {
        for a in first..last {
            facets.push(ridge.with_vertex(a).with_vertex(a + 1));
        }
    }
    facets.push(tau.with_vertex(first));
    facets.push(tau.with_vertex(last));
    Ok(SimplicialComplex::from_faces(facets))
}

/// The six-vertex real projective plane.
pub fn rp2_six() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ])
    .expect("valid facets")
}

/// The seven-vertex torus.
pub fn torus_seven() -> SimplicialComplex {
    SimplicialComplex::from_facets((0..7u32).flat_map(|i| {
        [
            [i, (i + 1) % 7, (i + 3) % 7],
            [i, (i + 2) % 7, (i + 3) % 7],
        ]
    }))
    .expect("valid facets")
}

/// Variants of the `g_2 = 1` family in dimension `d - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum G2OneVariant {
    /// `∂σ^i ∗ ∂σ^{d-i}`, `2 ≤ i ≤ d-2`.
    Join { i: usize },
    /// `C_n ∗ ∂σ^{d-2}`, `n ≥ 4`.
    Cycle { n: usize },
}

pub fn g2_one_family(d: usize, variant: G2OneVariant) -> Result<CatalogEntry> {
    let expected = Expected::tags(&[Tag::Sphere, Tag::Prime, Tag::G2One]).with_g2(1);
    match variant {
        G2OneVariant::Join { i } => {
            if d < 4 || i < 2 || i + 2 > d {
                return Err(out_of_range("join variant needs 2 <= i <= d - 2"));
            }
            let c = simplex_boundary(i)?.join(&simplex_boundary(d - i)?);
            CatalogEntry::new(format!("join-{i}-{}", d - i), vec![d as i64, i as i64], c, expected)
        }
        G2OneVariant::Cycle { n } => {
            if d < 4 || n < 4 {
                return Err(out_of_range("cycle variant needs d >= 4 and n >= 4"));
            }
            let c = cycle(n)?.join(&simplex_boundary(d - 2)?);
            CatalogEntry::new(format!("cycle-{n}-join-{}", d - 2), vec![d as i64, n as i64], c, expected)
        }
    }
}

/// The named `g_2 = 2` constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum G2TwoKind {
    /// `∂σ^1 ∗ ∂σ^2 ∗ ∂σ^{d-3}`, `d ≥ 5`.
    TripleJoin,
    /// Suspension of `∂σ^i ∗ ∂σ^{d-1-i}`, `2 ≤ i ≤ d-3`.
    SuspendedJoin { i: usize },
    /// Boundary of the 4-dimensional cross-polytope, `d = 4`.
    Octahedral,
    /// `crtr` of `∂σ^2 ∗ ∂σ^{d-2}` along the star of a facet of the second factor, `d ≥ 5`.
    Retriangulated,
    /// `crtr` of `C_n ∗ ∂σ^2` along the facets `{0,1,a,b}, {0,1,a,c}`, `d = 4`.
    FacetPairOverCycleEdge { n: usize },
    /// `crtr` of `C_n ∗ ∂σ^2` along the facets `{0,1,a,b}, {1,2,a,b}`, `d = 4`.
    FacetPairOverTriangleEdge { n: usize },
}

pub fn g2_two_catalog(d: usize, kind: G2TwoKind) -> Result<CatalogEntry> {
    let expected = Expected::tags(&[Tag::Sphere, Tag::Prime, Tag::G2Two]).with_g2(2);
    match kind {
        G2TwoKind::TripleJoin => {
            if d < 5 {
                return Err(out_of_range("triple join needs d >= 5"));
            }
            let c = simplex_boundary(1)?
                .join(&simplex_boundary(2)?)
                .join(&simplex_boundary(d - 3)?);
            CatalogEntry::new(format!("join-1-2-{}", d - 3), vec![d as i64], c, expected)
        }
        G2TwoKind::SuspendedJoin { i } => {
            if d < 5 || i < 2 || i + 3 > d {
                return Err(out_of_range("suspended join needs 2 <= i <= d - 3"));
            }
            let c = simplex_boundary(i)?
                .join(&simplex_boundary(d - 1 - i)?)
                .suspension();
            CatalogEntry::new(
                format!("suspension-join-{i}-{}", d - 1 - i),
                vec![d as i64, i as i64],
                c,
                expected,
            )
        }
        G2TwoKind::Octahedral => {
            if d != 4 {
                return Err(out_of_range("the octahedral sphere has d = 4"));
            }
            let mut expected = expected;
            expected.tags.insert(Tag::Octahedral);
            expected.f_vector = Some(vec![1, 8, 24, 32, 16]);
            CatalogEntry::new("octahedral-3-sphere", vec![4], cross_polytope_boundary(4)?, expected)
        }
        G2TwoKind::Retriangulated => {
            if d < 5 {
                return Err(out_of_range("retriangulated instance needs d >= 5"));
            }
            let base = simplex_boundary(2)?.join(&simplex_boundary(d - 2)?);
            // The second factor has labels 3..=d+1; drop its last vertex to get a facet.
            let tau = Face::range(3, d as Vertex + 1);
            let ball = base.star(&tau)?;
            let (c, _) = retriangulate::central_retriangulation(&base, &ball)?;
            CatalogEntry::new(format!("crtr-join-2-{}", d - 2), vec![d as i64], c, expected)
        }
        G2TwoKind::FacetPairOverCycleEdge { n } | G2TwoKind::FacetPairOverTriangleEdge { n } => {
            if d != 4 || n < 4 {
                return Err(out_of_range("facet-pair instances need d = 4 and n >= 4"));
            }
            let base = cycle(n)?.join(&simplex_boundary(2)?);
            let (a, b, c) = (n as Vertex, n as Vertex + 1, n as Vertex + 2);
            let (second, tag) = match kind {
                G2TwoKind::FacetPairOverCycleEdge { .. } => (Face::new([0, 1, a, c])?, "cycle-edge"),
                _ => (Face::new([1, 2, a, b])?, "triangle-edge"),
            };
            let ball = SimplicialComplex::from_faces([Face::new([0, 1, a, b])?, second]);
            let (out, _) = retriangulate::central_retriangulation(&base, &ball)?;
            CatalogEntry::new(format!("crtr-cycle-{n}-{tag}"), vec![4, n as i64], out, expected)
        }
    }
}

/// Parses an `.scx` file and, when present, the sidecar `<stem>.expected.json` next to it.
pub fn load_fixture(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let complex = io::parse_scx(&text)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let sidecar_path = path.with_file_name(format!("{stem}.expected.json"));
    let sidecar = match std::fs::read_to_string(&sidecar_path) {
        Ok(text) => Some(io::parse_sidecar(&text)?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(Error::Io(format!("{}: {e}", sidecar_path.display()))),
    };
    entry_from_parts(stem, complex, sidecar)
}

fn entry_from_parts(
    stem: String,
    complex: SimplicialComplex,
    sidecar: Option<io::Sidecar>,
) -> Result<CatalogEntry> {
    let mut expected = Expected::tags(&[Tag::Fixture]);
    let mut name = stem;
    if let Some(s) = sidecar {
        name = s.name;
        expected.f_vector = s.f_vector;
        expected.g2 = s.g2;
        for t in &s.tags {
            expected.tags.insert(t.parse()?);
        }
    }
    CatalogEntry::new(name, Vec::new(), complex, expected)
}

const BARNETTE_SCX: &str = include_str!("../fixtures/barnette.scx");
const BARNETTE_EXPECTED: &str = include_str!("../fixtures/barnette.expected.json");

/// The Barnette sphere, from the bundled fixture.
pub fn barnette() -> CatalogEntry {
    let complex = io::parse_scx(BARNETTE_SCX).expect("bundled fixture parses");
    let sidecar = io::parse_sidecar(BARNETTE_EXPECTED).expect("bundled sidecar parses");
    entry_from_parts("barnette".into(), complex, Some(sidecar)).expect("bundled fixture verifies")
}

/// Size limits for catalog generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Scale {
    /// Largest `d = dim + 1` of generated spheres.
    pub dmax: usize,
    /// Largest vertex count.
    pub max_vertices: usize,
    /// Longest cycle in the cycle family.
    pub max_cycle: usize,
}

impl Default for Scale {
    fn default() -> Scale {
        Scale {
            dmax: 6,
            max_vertices: 14,
            max_cycle: 8,
        }
    }
}

/// The catalog at the default scale, built once.
pub fn default_catalog() -> &'static [CatalogEntry] {
    static CATALOG: std::sync::OnceLock<Vec<CatalogEntry>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| catalog(Scale::default()).expect("default catalog verifies"))
}

/// All catalog entries at the given scale, in a fixed order.
pub fn catalog(scale: Scale) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let fits = |c: &SimplicialComplex| c.num_vertices() <= scale.max_vertices;
    let mut push = |e: CatalogEntry| {
        if fits(&e.complex) {
            out.push(e);
        }
    };
    let sphere = [Tag::Sphere, Tag::Pseudomanifold];

    for d in 2..=scale.dmax.max(2) {
        let c = simplex_boundary(d)?;
        let tags = [Tag::Sphere, Tag::Manifold, Tag::Pseudomanifold, Tag::Prime, Tag::Stacked];
        push(CatalogEntry::new(format!("simplex-boundary-{d}"), vec![d as i64], c, Expected::tags(&tags).with_g2(0))?);
    }
    for d in 3..=scale.dmax {
        for n in d + 2..=scale.max_vertices.min(12) {
            let c = stacked_sphere(d, n)?;
            push(CatalogEntry::new(
                format!("stacked-{d}-{n}"),
                vec![d as i64, n as i64],
                c,
                Expected::tags(&[Tag::Sphere, Tag::Stacked]).with_g2(0),
            )?);
        }
    }
    for d in 4..=scale.dmax {
        for i in 2..=d - 2 {
            push(g2_one_family(d, G2OneVariant::Join { i })?);
        }
        for n in 4..=scale.max_cycle {
            push(g2_one_family(d, G2OneVariant::Cycle { n })?);
        }
    }
    for d in 3..=scale.dmax {
        for n in d + 3..=scale.max_vertices.min(12) {
            push(CatalogEntry::new(
                format!("ridge-stacked-{d}-{n}"),
                vec![d as i64, n as i64],
                ridge_stacked_sphere(d, n)?,
                Expected::tags(&[Tag::Sphere, Tag::Stacked]).with_g2(0),
            )?);
        }
    }
    if scale.dmax >= 4 {
        push(g2_two_catalog(4, G2TwoKind::Octahedral)?);
        for n in 4..=scale.max_cycle.min(6) {
            push(g2_two_catalog(4, G2TwoKind::FacetPairOverCycleEdge { n })?);
            push(g2_two_catalog(4, G2TwoKind::FacetPairOverTriangleEdge { n })?);
        }
    }
    for d in 5..=scale.dmax {
        push(g2_two_catalog(d, G2TwoKind::TripleJoin)?);
        for i in 2..=(d - 1) / 2 {
            push(g2_two_catalog(d, G2TwoKind::SuspendedJoin { i })?);
        }
        push(g2_two_catalog(d, G2TwoKind::Retriangulated)?);
    }
    for d in 3..=scale.dmax {
        let c = cross_polytope_boundary(d)?;
        if d != 4 {
            push(CatalogEntry::new(
                format!("cross-polytope-{d}"),
                vec![d as i64],
                c,
                Expected::tags(&[Tag::Sphere, Tag::Prime]),
            )?);
        }
    }
    // Stacking preserves g_2 and destroys primality.
    for d in 4..=scale.dmax {
        for base in [
            g2_one_family(d, G2OneVariant::Join { i: 2 })?,
            g2_one_family(d, G2OneVariant::Cycle { n: 4 })?,
        ] {
            let facet = base.complex.facets().last().expect("nonempty").clone();
            let c = base.complex.stack_over_facet(&facet)?;
            push(CatalogEntry::new(
                format!("{}-stacked", base.name),
                base.parameters.clone(),
                c,
                Expected::tags(&sphere).with_g2(1),
            )?);
        }
    }
    if scale.dmax >= 4 {
        let oct = cross_polytope_boundary(4)?;
        let facet = oct.facets()[0].clone();
        push(CatalogEntry::new(
            "octahedral-3-sphere-stacked",
            vec![4],
            oct.stack_over_facet(&facet)?,
            Expected::tags(&sphere).with_g2(2),
        )?);
        push(swartz_instance()?);
        push(barnette());
    }
    push(CatalogEntry::new("rp2-six", vec![], rp2_six(), Expected::tags(&[Tag::Manifold, Tag::Pseudomanifold, Tag::Torsion]))?);
    push(CatalogEntry::new("torus-seven", vec![], torus_seven(), Expected::tags(&[Tag::Manifold, Tag::Pseudomanifold]))?);
    Ok(out)
}

/// `∂σ^1 ∗ stacked_sphere(3, 6)`: both poles have a stacked 2-sphere with two missing
/// facets as link, and `g_2 = 2`.
pub fn swartz_instance() -> Result<CatalogEntry> {
    let c = simplex_boundary(1)?.join(&stacked_sphere(3, 6)?);
    CatalogEntry::new(
        "suspension-stacked-3-6",
        vec![3, 6],
        c,
        Expected::tags(&[Tag::Sphere, Tag::Pseudomanifold]).with_g2(2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{are_isomorphic, detect_join};

    #[test]
    fn simplex_boundary_two_is_triangle() {
        assert_eq!(simplex_boundary(2).unwrap(), cycle(3).unwrap());
        assert_eq!(simplex_boundary(4).unwrap().f_vector().0, vec![1, 5, 10, 10, 5]);
        assert!(simplex_boundary(0).is_err());
        assert!(cycle(2).is_err());
    }

    #[test]
    fn stacked_spheres() {
        assert_eq!(stacked_sphere(4, 5).unwrap(), simplex_boundary(4).unwrap());
        let s = stacked_sphere(4, 8).unwrap();
        assert_eq!(s.num_vertices(), 8);
        assert_eq!(s.f_vector().get(1), 22);
        assert_eq!(s.g2_from_counts(), 0);
        for &v in s.vertices() {
            let lk = s.link(&Face::vertex(v)).unwrap();
            assert!(lk.g(1) >= 0);
            assert_eq!(lk.f_vector().get(1), 3 * lk.num_vertices() as i64 - 6);
        }
        assert!(stacked_sphere(4, 4).is_err());
    }

    #[test]
    fn cross_polytopes() {
        assert_eq!(cross_polytope_boundary(3).unwrap().f_vector().0, vec![1, 6, 12, 8]);
        let oct = cross_polytope_boundary(4).unwrap();
        assert_eq!(oct.f_vector().0, vec![1, 8, 24, 32, 16]);
        assert_eq!(oct.g2_from_counts(), 2);
        assert!(!cross_polytope_boundary(2).unwrap().is_prime());
        for d in 3..=5 {
            assert!(cross_polytope_boundary(d).unwrap().is_prime());
        }
        let octahedron = cross_polytope_boundary(3).unwrap();
        for &v in oct.vertices() {
            let lk = oct.link(&Face::vertex(v)).unwrap();
            assert!(are_isomorphic(&lk, &octahedron).unwrap().is_isomorphic());
        }
        let c4 = cycle(4).unwrap();
        assert!(are_isomorphic(&oct, &c4.join(&c4)).unwrap().is_isomorphic());
    }

    #[test]
    fn g2_one_members() {
        let e = g2_one_family(5, G2OneVariant::Join { i: 2 }).unwrap();
        assert_eq!(e.complex.num_vertices(), 7);
        let e = g2_one_family(4, G2OneVariant::Cycle { n: 5 }).unwrap();
        assert_eq!(e.complex.g2_from_counts(), 1);
        assert!(g2_one_family(5, G2OneVariant::Join { i: 1 }).is_err());
        assert!(g2_one_family(5, G2OneVariant::Join { i: 4 }).is_err());
        assert!(g2_one_family(4, G2OneVariant::Cycle { n: 3 }).is_err());
    }

    #[test]
    fn ridge_stacked() {
        assert_eq!(ridge_stacked_sphere(4, 5).unwrap(), simplex_boundary(4).unwrap());
        for n in 6..=9 {
            let s = ridge_stacked_sphere(5, n).unwrap();
            assert_eq!(s.num_vertices(), n);
            assert_eq!(s.g2_from_counts(), 0);
            assert!(homology::is_homology_sphere(&s, Field::Rational).is_ok());
            let tau = Face::range(0, 4);
            assert!(s.missing_faces(4).iter().all(|m| tau.is_subset(m)));
            let (out, _) = retriangulate::central_retriangulation(&s, &s.star(&tau).unwrap()).unwrap();
            let member = cycle(n - 3).unwrap().join(&simplex_boundary(3).unwrap());
            assert!(are_isomorphic(&out, &member).unwrap().is_isomorphic());
        }
    }

    #[test]
    fn facet_pair_instances() {
        for n in 4..=6 {
            for kind in [G2TwoKind::FacetPairOverCycleEdge { n }, G2TwoKind::FacetPairOverTriangleEdge { n }] {
                let e = g2_two_catalog(4, kind).unwrap();
                assert_eq!(e.complex.num_vertices(), n + 4);
            }
        }
        assert!(g2_two_catalog(5, G2TwoKind::FacetPairOverCycleEdge { n: 4 }).is_err());
    }

    #[test]
    fn g2_two_members() {
        let t = g2_two_catalog(6, G2TwoKind::TripleJoin).unwrap();
        assert_eq!(t.complex.g2_from_counts(), 2);
        let s = g2_two_catalog(5, G2TwoKind::SuspendedJoin { i: 2 }).unwrap();
        assert_eq!(s.complex.g2_from_counts(), 2);
        for d in [5, 6] {
            let r = g2_two_catalog(d, G2TwoKind::Retriangulated).unwrap();
            let t = g2_two_catalog(d, G2TwoKind::TripleJoin).unwrap();
            assert!(are_isomorphic(&r.complex, &t.complex).unwrap().is_isomorphic());
        }
        assert!(g2_two_catalog(4, G2TwoKind::TripleJoin).is_err());
        assert!(g2_two_catalog(5, G2TwoKind::Octahedral).is_err());
    }

    #[test]
    fn expectations_are_checked() {
        let err = CatalogEntry::new("bad", vec![], simplex_boundary(3).unwrap(), Expected::default().with_g2(1))
            .unwrap_err();
        assert!(matches!(err, Error::Expectation { .. }));
        let err = CatalogEntry::new("bad", vec![], rp2_six(), Expected::tags(&[Tag::Sphere])).unwrap_err();
        assert!(err.to_string().contains("sphere"));
    }

    #[test]
    fn barnette_fixture() {
        let b = barnette();
        assert_eq!(b.complex.num_vertices(), 8);
        assert_eq!(b.complex.num_facets(), 19);
        assert_eq!(b.complex.g2_from_counts(), 5);
        assert!(b.has(Tag::Sphere));
    }

    #[test]
    fn fixture_round_trip_and_errors() {
        let dir = std::env::temp_dir().join(format!("lbtkit-gen-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tri.scx");
        std::fs::write(&path, io::write_scx(&simplex_boundary(3).unwrap())).unwrap();
        let e = load_fixture(&path).unwrap();
        assert_eq!(e.name, "tri");
        assert_eq!(io::write_scx(&e.complex), std::fs::read_to_string(&path).unwrap());
        std::fs::write(dir.join("tri.expected.json"), r#"{"name":"t","g2":3}"#).unwrap();
        assert!(matches!(load_fixture(&path), Err(Error::Expectation { .. })));
        std::fs::write(&path, "0 1 2\n1 1 2\n").unwrap();
        assert!(matches!(load_fixture(&path), Err(Error::Parse { line: 2, .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn default_catalog_shape() {
        let cat = catalog(Scale::default()).unwrap();
        let names: BTreeSet<&str> = cat.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), cat.len(), "names are unique");
        let npm = cat
            .iter()
            .filter(|e| (4..=6).contains(&e.d()) && Tag::Pseudomanifold.holds(&e.complex) == Some(true))
            .count();
        assert!(npm >= 30, "{npm}");
        for e in &cat {
            assert!(e.complex.num_vertices() <= 14);
            if e.complex.num_vertices() == e.d() + 1 + 1 && Tag::Pseudomanifold.holds(&e.complex) == Some(true) {
                let (a, b) = detect_join(&e.complex).expect("d + 2 vertices");
                for part in [a, b] {
                    let r = e.complex.restriction(&part);
                    assert_eq!(r, SimplicialComplex::from_faces(part.boundary()));
                }
            }
        }
    }

    #[test]
    fn swartz_instance_has_stacked_pole_link() {
        let e = swartz_instance().unwrap();
        let pole = 0;
        let lk = e.complex.link(&Face::vertex(pole)).unwrap();
        assert_eq!(lk.missing_faces(2).len(), 2);
    }
}
