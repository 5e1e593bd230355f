//! Periodic d-dimensional cubic lattice with staggered-fermion bookkeeping.
//!
//! Qubit numbering: the N sites come first in row-major order (last
//! coordinate fastest), followed by the dN links grouped by direction and
//! then row-major by their base site. Link `L_{l,k}` joins site `l` to
//! site `l + k̂`. The link index `k·N + site` (without the `N` site offset)
//! doubles as the logical-qubit index of the Gauss'-law code.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeSpec", into = "LatticeSpec")]
pub struct Lattice {
    dims: Vec<usize>,
    boundary: Boundary,
    strides: Vec<usize>,
}

/// Config-file form of a lattice: `{"dims": [..], "boundary": "periodic"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub boundary: Boundary,
}

impl TryFrom<LatticeSpec> for Lattice {
    type Error = Error;

    fn try_from(spec: LatticeSpec) -> Result<Self> {
        Lattice::with_boundary(&spec.dims, spec.boundary)
    }
}

impl From<Lattice> for LatticeSpec {
    fn from(l: Lattice) -> Self {
        LatticeSpec {
            dims: l.dims,
            boundary: l.boundary,
        }
    }
}

/// Qubits touched by the Gauss'-law operator of one site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSupport {
    pub site_qubit: usize,
    /// For each direction: incoming link `L_{l−k,k}` then outgoing `L_{l,k}`.
    pub link_qubits: Vec<usize>,
}

impl GaussSupport {
    pub fn qubits(&self) -> Vec<usize> {
        let mut q = vec![self.site_qubit];
        q.extend(&self.link_qubits);
        q
    }
}

/// Unit square bounded by four links, labelled 1..4 counter-clockwise from
/// the base link: `L_{l,a}`, `L_{l+a,b}`, `L_{l+b,a}`, `L_{l,b}` with `a < b`.
/// Links 1 and 3 are parallel, as are 2 and 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plaquette {
    pub site: usize,
    pub directions: (usize, usize),
    pub link_qubits: [usize; 4],
}

impl Lattice {
    pub fn new(dims: &[usize]) -> Result<Self> {
        Lattice::with_boundary(dims, Boundary::Periodic)
    }

    pub fn with_boundary(dims: &[usize], boundary: Boundary) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Invalid("lattice needs at least one dimension".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Invalid(format!("lattice extent must be positive: {dims:?}")));
        }
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len() - 1).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Ok(Lattice {
            dims: dims.to_vec(),
            boundary,
            strides,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    pub fn n_sites(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn n_links(&self) -> usize {
        self.dimension() * self.n_sites()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_sites() + self.n_links()
    }

    /// Whether the single-X-error guarantee holds: `N ≥ 3^d`.
    pub fn theorem1_applicable(&self) -> bool {
        let need = 3usize.checked_pow(self.dimension() as u32).unwrap_or(usize::MAX);
        self.n_sites() >= need
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n_sites() {
            return Err(Error::OutOfRange {
                what: "site",
                index: site,
                limit: self.n_sites(),
            });
        }
        Ok(())
    }

    pub fn site_coords(&self, site: usize) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (site / s) % n)
            .collect()
    }

    pub fn site_index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.dims)
            .zip(&self.strides)
            .map(|((&c, &n), &s)| (c % n) * s)
            .sum()
    }

    /// Site reached from `site` by `delta` steps along direction `dir`.
    pub fn shifted(&self, site: usize, dir: usize, delta: isize) -> usize {
        let n = self.dims[dir] as isize;
        let c = (site / self.strides[dir]) % self.dims[dir];
        let moved = (c as isize + delta).rem_euclid(n) as usize;
        site - c * self.strides[dir] + moved * self.strides[dir]
    }

    pub fn site_qubit(&self, site: usize) -> usize {
        site
    }

    /// Index of link `L_{site,dir}` among the dN links.
    pub fn link_index(&self, site: usize, dir: usize) -> usize {
        dir * self.n_sites() + site
    }

    pub fn link_qubit(&self, site: usize, dir: usize) -> usize {
        self.n_sites() + self.link_index(site, dir)
    }

    /// `(base site, direction)` of a link index.
    pub fn link_site_dir(&self, link: usize) -> (usize, usize) {
        (link % self.n_sites(), link / self.n_sites())
    }

    pub fn link_endpoints(&self, link: usize) -> (usize, usize) {
        let (site, dir) = self.link_site_dir(link);
        (site, self.shifted(site, dir, 1))
    }

    pub fn gauss_support(&self, site: usize) -> Result<GaussSupport> {
        self.check_site(site)?;
        let mut link_qubits = Vec::with_capacity(2 * self.dimension());
        for dir in 0..self.dimension() {
            link_qubits.push(self.link_qubit(self.shifted(site, dir, -1), dir));
            link_qubits.push(self.link_qubit(site, dir));
        }
        Ok(GaussSupport {
            site_qubit: self.site_qubit(site),
            link_qubits,
        })
    }

    /// One plaquette per site per direction pair; empty in 1D.
    pub fn plaquettes(&self) -> Vec<Plaquette> {
        let d = self.dimension();
        let mut out = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for site in 0..self.n_sites() {
                    out.push(Plaquette {
                        site,
                        directions: (a, b),
                        link_qubits: [
                            self.link_qubit(site, a),
                            self.link_qubit(self.shifted(site, a, 1), b),
                            self.link_qubit(self.shifted(site, b, 1), a),
                            self.link_qubit(site, b),
                        ],
                    });
                }
            }
        }
        out
    }

    /// `σ_l = (−1)^{l_1+…+l_d}`.
    pub fn staggered_sign(&self, site: usize) -> f64 {
        if self.site_coords(site).iter().sum::<usize>() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Hopping sign: `+1` along the first direction and
    /// `(−1)^{l_1+…+l_{k−1}}` along direction `k ≥ 2`.
    pub fn hop_sign(&self, site: usize, dir: usize) -> f64 {
        let c = self.site_coords(site);
        if c[..dir].iter().sum::<usize>() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let l = Lattice::new(&[3]).unwrap();
        assert_eq!((l.n_sites(), l.n_links(), l.n_qubits()), (3, 3, 6));
        assert!(l.theorem1_applicable());

        let l = Lattice::new(&[3, 3]).unwrap();
        assert_eq!((l.n_sites(), l.n_links(), l.n_qubits()), (9, 18, 27));
        assert_eq!(l.plaquettes().len(), 9);

        let l = Lattice::new(&[2]).unwrap();
        assert_eq!(l.n_qubits(), 4);
        assert!(!l.theorem1_applicable());
    }

    #[test]
    fn invalid_dims() {
        assert!(Lattice::new(&[]).is_err());
        assert!(Lattice::new(&[3, 0]).is_err());
    }

    #[test]
    fn gauss_support_1d() {
        let l = Lattice::new(&[4]).unwrap();
        // S_2 with links L_1 (qubit 5) and L_2 (qubit 6).
        let g = l.gauss_support(2).unwrap();
        assert_eq!(g.site_qubit, 2);
        assert_eq!(g.link_qubits, vec![5, 6]);
        let g0 = l.gauss_support(0).unwrap();
        assert_eq!(g0.link_qubits, vec![7, 4]);
        assert!(matches!(l.gauss_support(4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn gauss_support_sizes() {
        let l2 = Lattice::new(&[3, 3]).unwrap();
        assert_eq!(l2.gauss_support(4).unwrap().link_qubits.len(), 4);
        let l3 = Lattice::new(&[3, 3, 3]).unwrap();
        assert_eq!(l3.gauss_support(13).unwrap().link_qubits.len(), 6);
    }

    #[test]
    fn plaquette_geometry() {
        let l = Lattice::new(&[3, 3]).unwrap();
        assert!(Lattice::new(&[5]).unwrap().plaquettes().is_empty());
        for p in l.plaquettes() {
            let dirs: Vec<usize> = p
                .link_qubits
                .iter()
                .map(|&q| l.link_site_dir(q - l.n_sites()).1)
                .collect();
            assert_eq!(dirs, vec![0, 1, 0, 1]);
        }
    }

    #[test]
    fn signs() {
        let l = Lattice::new(&[4, 4]).unwrap();
        assert_eq!(l.staggered_sign(l.site_index(&[0, 0])), 1.0);
        assert_eq!(l.staggered_sign(l.site_index(&[1, 0])), -1.0);
        assert_eq!(l.hop_sign(l.site_index(&[1, 2]), 1), -1.0);
        assert_eq!(l.hop_sign(l.site_index(&[1, 2]), 0), 1.0);
        assert_eq!(l.hop_sign(l.site_index(&[2, 3]), 1), 1.0);
    }

    #[test]
    fn config_form() {
        let l: Lattice = serde_json::from_str(r#"{"dims":[3,3],"boundary":"periodic"}"#).unwrap();
        assert_eq!(l.n_sites(), 9);
        let l: Lattice = serde_json::from_str(r#"{"dims":[4]}"#).unwrap();
        assert_eq!(l.dims(), &[4]);
        assert!(serde_json::from_str::<Lattice>(r#"{"dims":[]}"#).is_err());
        assert!(serde_json::from_str::<Lattice>(r#"{"dims":[3],"boundary":"open"}"#).is_err());
    }
}
