use std::fmt;

use serde::Serialize;

/// Largest manifold dimension accepted by the parser and constructors.
pub const MAX_MANIFOLD_DIM: usize = 4096;

/// `Θ^8 = Θ^16 = Z/2`; kept for reference only, the group structure is not modeled.
pub const EXOTIC_SPHERE_GROUP_ORDER_8_16: usize = 2;

/// One connected summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Atom {
    Sphere { dim: usize },
    ProductOfSpheres { a: usize, b: usize },
    HomotopySphere { dim: usize, exotic_possible: bool },
}

impl Atom {
    pub fn dim(&self) -> usize {
        match *self {
            Atom::Sphere { dim } | Atom::HomotopySphere { dim, .. } => dim,
            Atom::ProductOfSpheres { a, b } => a + b,
        }
    }
}

/// Whether `Σ^4 ∖ int D^4` embeds in `S^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedsInS4 {
    Yes,
    Assumed,
    NotApplicable,
}

/// A connected sum of spheres, sphere products and at most one homotopy sphere.
///
/// Normal form: standard sphere summands are dropped (they are units for `#`),
/// homotopy spheres merge into one, products are stored with `a ≤ b` and
/// grouped by multiplicity, larger smaller-factor first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ManifoldDescriptor {
    dim: usize,
    /// A possibly exotic homotopy-sphere summand is present.
    sigma: bool,
    /// `(a, b, count)` with `a ≤ b`, `a + b = dim`, `count ≥ 1`.
    products: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    DimensionTooSmall(usize),
    DimensionTooLarge(usize),
    FactorDimensionZero,
    DimensionMismatch { expected: usize, found: usize },
    Overflow,
}

impl fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionTooSmall(d) => write!(f, "manifold dimension {d} is below 2"),
            Self::DimensionTooLarge(d) => write!(f, "manifold dimension {d} exceeds {MAX_MANIFOLD_DIM}"),
            Self::FactorDimensionZero => write!(f, "sphere factors must have dimension at least 1"),
            Self::DimensionMismatch { expected, found } => {
                write!(
                    f,
                    "summand of dimension {found} in a dimension-{expected} connected sum"
                )
            }
            Self::Overflow => write!(f, "summand count overflows"),
        }
    }
}

impl std::error::Error for DescriptorError {}

impl ManifoldDescriptor {
    /// The standard sphere `S^dim`.
    pub fn sphere(dim: usize) -> Result<Self, DescriptorError> {
        Self::from_atoms(dim, std::iter::empty())
    }

    /// Builds the normal form of `#` over `(count, atom)` pairs.
    pub fn from_atoms<I>(dim: usize, atoms: I) -> Result<Self, DescriptorError>
    where
        I: IntoIterator<Item = (usize, Atom)>,
    {
        check_dim(dim)?;
        let mut sigma = false;
        let mut products: Vec<(usize, usize, usize)> = Vec::new();
        for (count, atom) in atoms {
            if atom.dim() != dim {
                return Err(DescriptorError::DimensionMismatch {
                    expected: dim,
                    found: atom.dim(),
                });
            }
            if count == 0 {
                continue;
            }
            match atom {
                // A homotopy sphere known to be standard is a unit for `#`.
                Atom::Sphere { .. }
                | Atom::HomotopySphere {
                    exotic_possible: false, ..
                } => {}
                Atom::HomotopySphere {
                    exotic_possible: true, ..
                } => sigma = true,
                Atom::ProductOfSpheres { a, b } => {
                    if a == 0 || b == 0 {
                        return Err(DescriptorError::FactorDimensionZero);
                    }
                    let (a, b) = (a.min(b), a.max(b));
                    match products.iter_mut().find(|p| p.0 == a) {
                        Some(p) => p.2 = p.2.checked_add(count).ok_or(DescriptorError::Overflow)?,
                        None => products.push((a, b, count)),
                    }
                }
            }
        }
        products.sort_by_key(|p| std::cmp::Reverse(p.0));
        Ok(Self { dim, sigma, products })
    }

    /// `Σ^{2n} #_e S^n×S^n #_c S^1×S^{2n−1}`.
    pub fn theorem_source(n: usize, e: usize, c: usize, sigma_exotic_possible: bool) -> Result<Self, DescriptorError> {
        let dim = 2 * n;
        Self::from_atoms(
            dim,
            [
                (
                    1,
                    Atom::HomotopySphere {
                        dim,
                        exotic_possible: sigma_exotic_possible,
                    },
                ),
                (e, Atom::ProductOfSpheres { a: n, b: n }),
                (c, Atom::ProductOfSpheres { a: 1, b: dim - 1 }),
            ],
        )
    }

    /// `#_c S^1×S^n`, or `S^{n+1}` for `c = 0`.
    pub fn theorem_target(n: usize, c: usize) -> Result<Self, DescriptorError> {
        Self::from_atoms(n + 1, [(c, Atom::ProductOfSpheres { a: 1, b: n })])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether a possibly exotic homotopy-sphere summand is present.
    pub fn has_sigma(&self) -> bool {
        self.sigma
    }

    pub fn products(&self) -> &[(usize, usize, usize)] {
        &self.products
    }

    pub fn product_count(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.products.iter().find(|p| p.0 == a && p.1 == b).map_or(0, |p| p.2)
    }

    /// Normalized `(count, atom)` list in print order.
    pub fn atoms(&self) -> Vec<(usize, Atom)> {
        let mut out = Vec::new();
        if self.sigma {
            out.push((
                1,
                Atom::HomotopySphere {
                    dim: self.dim,
                    exotic_possible: true,
                },
            ));
        }
        out.extend(
            self.products
                .iter()
                .map(|&(a, b, k)| (k, Atom::ProductOfSpheres { a, b })),
        );
        if out.is_empty() {
            out.push((1, Atom::Sphere { dim: self.dim }));
        }
        out
    }

    /// Betti numbers `β_0 … β_dim` by connected-sum additivity and Künneth.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0; self.dim + 1];
        b[0] = 1;
        b[self.dim] = 1;
        for &(p, q, k) in &self.products {
            b[p] += k;
            b[q] += k;
        }
        b
    }

    /// Number of `S^1 × S^{dim−1}` summands; the rank of the free group `π_1`.
    pub fn pi1_rank(&self) -> usize {
        self.product_count(1, self.dim - 1)
    }

    pub fn embeds_in_s4(&self) -> EmbedsInS4 {
        match (self.dim, self.sigma) {
            (4, true) => EmbedsInS4::Assumed,
            (4, _) => EmbedsInS4::Yes,
            _ => EmbedsInS4::NotApplicable,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .atoms()
            .into_iter()
            .map(|(k, atom)| {
                let body = match atom {
                    Atom::Sphere { dim } => format!("S{dim}"),
                    Atom::HomotopySphere { dim, .. } => format!("Sigma{dim}"),
                    Atom::ProductOfSpheres { a, b } => format!("S{a}xS{b}"),
                };
                if k == 1 {
                    body
                } else {
                    format!("{k}*{body}")
                }
            })
            .collect();
        f.write_str(&parts.join(" # "))
    }
}

impl Serialize for ManifoldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_dim(dim: usize) -> Result<(), DescriptorError> {
    if dim < 2 {
        Err(DescriptorError::DimensionTooSmall(dim))
    } else if dim > MAX_MANIFOLD_DIM {
        Err(DescriptorError::DimensionTooLarge(dim))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_betti() {
        let s = ManifoldDescriptor::sphere(5).unwrap();
        assert_eq!(s.betti(), vec![1, 0, 0, 0, 0, 1]);
        assert_eq!(s.to_string(), "S5");
    }

    #[test]
    fn target_betti() {
        let n = ManifoldDescriptor::theorem_target(4, 3).unwrap();
        let b = n.betti();
        assert_eq!((b[1], b[4], b[5]), (3, 3, 1));
        assert_eq!(n.pi1_rank(), 3);
    }

    #[test]
    fn source_middle_betti_is_two_e() {
        for n in [2, 4, 8] {
            for e in 0..5 {
                let m = ManifoldDescriptor::theorem_source(n, e, 2, true).unwrap();
                assert_eq!(m.betti()[n], 2 * e);
            }
        }
    }

    #[test]
    fn normal_form_drops_spheres_and_merges_sigmas() {
        let m = ManifoldDescriptor::from_atoms(
            8,
            [
                (2, Atom::ProductOfSpheres { a: 7, b: 1 }),
                (1, Atom::Sphere { dim: 8 }),
                (
                    1,
                    Atom::HomotopySphere {
                        dim: 8,
                        exotic_possible: true,
                    },
                ),
                (2, Atom::ProductOfSpheres { a: 4, b: 4 }),
                (
                    1,
                    Atom::HomotopySphere {
                        dim: 8,
                        exotic_possible: false,
                    },
                ),
            ],
        )
        .unwrap();
        assert_eq!(m.to_string(), "Sigma8 # 2*S4xS4 # 2*S1xS7");
        assert_eq!(m.embeds_in_s4(), EmbedsInS4::NotApplicable);
    }

    #[test]
    fn rejects_mixed_dimensions() {
        assert_eq!(
            ManifoldDescriptor::from_atoms(4, [(1, Atom::Sphere { dim: 3 })]),
            Err(DescriptorError::DimensionMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn euler_characteristic_of_products() {
        let m = ManifoldDescriptor::from_atoms(4, [(1, Atom::ProductOfSpheres { a: 2, b: 2 })]).unwrap();
        assert_eq!(m.euler_characteristic(), 4);
        assert_eq!(m.embeds_in_s4(), EmbedsInS4::Yes);
    }
}
