//! Face numbers: f-, h- and g-vectors and the conversions between them.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;

/// Binomial coefficient with `C(n, k) = 0` whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(acc).expect("binomial coefficient overflows i64")
}

/// `(f_{-1}, f_0, .., f_{d-1})`, stored from `f_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<i64>);

/// `(h_0, .., h_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<i64>);

/// `(g_0, .., g_{⌊d/2⌋})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GVector(pub Vec<i64>);

impl FVector {
    /// `d = dim + 1`.
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    /// `f_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> i64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|j| self.0.get(j))
            .copied()
            .unwrap_or(0)
    }

    /// Expands `Σ_i f_{i-1} (λ-1)^{d-i}` in powers of λ.
    pub fn to_h(&self) -> HVector {
        let d = self.d() as i64;
        let h = (0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, j - i) * self.get(i as isize - 1)
                    })
                    .sum()
            })
            .collect();
        HVector(h)
    }

    /// Direct formula `g_j = Σ_i (-1)^{j-i} C(d+1-i, j-i) f_{i-1}` with `d = dim + 1`.
    /// Defined for every `j ≥ 0` and equal to `h_j - h_{j-1}`.
    pub fn g_direct(&self, j: usize) -> i64 {
        let d = self.d() as i64;
        let j = j as i64;
        (0..=j)
            .map(|i| {
                let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                sign * binomial(d + 1 - i, j - i) * self.get(i as isize - 1)
            })
            .sum()
    }
}

impl HVector {
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    /// `h_j`, zero outside `0..=d`.
    pub fn get(&self, j: isize) -> i64 {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.0.get(j))
            .copied()
            .unwrap_or(0)
    }

    /// Inverts the defining relation: `f_{k-1} = Σ_i C(d-i, k-i) h_i`.
    pub fn to_f(&self) -> FVector {
        let d = self.d() as i64;
        let f = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| binomial(d - i, k - i) * self.get(i as isize))
                    .sum()
            })
            .collect();
        FVector(f)
    }

    /// `h_k - h_{k-1}` for any `k ≥ 0`, including indices past `⌊d/2⌋`.
    pub fn diff(&self, k: usize) -> i64 {
        self.get(k as isize) - self.get(k as isize - 1)
    }

    pub fn to_g(&self) -> GVector {
        GVector((0..=self.d() / 2).map(|k| self.diff(k)).collect())
    }
}

impl GVector {
    /// `g_i`, zero outside the stored range.
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

/// Face numbers of a complex together with the convention used to compute them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceNumbers {
    pub f: FVector,
    pub h: HVector,
    pub g: GVector,
    pub d: usize,
    /// False when the complex is impure; the numbers then use `d = dim + 1`.
    pub pure: bool,
}

impl SimplicialComplex {
    pub fn f_vector(&self) -> FVector {
        let top = (self.dim() + 1) as usize;
        FVector(
            (0..=top)
                .map(|i| self.faces_of_dim(i as isize - 1).len() as i64)
                .collect(),
        )
    }

    /// h-vector via the polynomial identity, cross-checked against the direct g formula.
    pub fn h_vector(&self) -> HVector {
        let f = self.f_vector();
        let h = f.to_h();
        for j in 0..=h.d() + 1 {
            assert_eq!(
                h.diff(j),
                f.g_direct(j),
                "h-vector and direct g formula disagree at index {j}"
            );
        }
        h
    }

    pub fn g_vector(&self) -> GVector {
        self.h_vector().to_g()
    }

    /// `h_k - h_{k-1}` for any `k`, so `g_{⌊d/2⌋+1}` and beyond are available.
    pub fn g(&self, k: usize) -> i64 {
        self.h_vector().diff(k)
    }

    /// `g_2 = f_1 - d f_0 + C(d+1, 2)`, computed from face counts only.
    pub fn g2_from_counts(&self) -> i64 {
        let d = self.dim() + 1;
        let f0 = self.faces_of_dim(0).len() as i64;
        let f1 = self.faces_of_dim(1).len() as i64;
        f1 - d as i64 * f0 + binomial(d as i64 + 1, 2)
    }

    pub fn face_numbers(&self) -> FaceNumbers {
        let h = self.h_vector();
        FaceNumbers {
            f: self.f_vector(),
            g: h.to_g(),
            d: h.d(),
            h,
            pure: self.is_pure(),
        }
    }

    /// Reduced Euler characteristic `Σ_i (-1)^i f_i`, starting at `i = -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .0
            .iter()
            .enumerate()
            .map(|(j, &f)| if j % 2 == 1 { f } else { -f })
            .sum()
    }
}
