//! Multipartite Hamiltonians with k-body couplings.
//!
//! The assembled operator is
//!
//! ```text
//! H = Σ_j H_j^(0)  +  Σ_{l ∈ orders} ε_{l-1} Σ_{j_1 < … < j_l} H_{j_1}^(l-1) ⊗ … ⊗ H_{j_l}^(l-1),
//! ```
//!
//! with identity padding on every uninvolved factor and one coupling constant
//! per interaction order. The order-`l` sum runs over all `C(N, l)` index
//! subsets. Term matrices are supplied by the caller (typically GOE samples),
//! keeping this module deterministic and model-agnostic; a subsystem may
//! register a single matrix shared across every order.

use itertools::Itertools;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{embed_product, HermitianMatrix, DEFAULT_MAX_DIM};

/// Term matrices, couplings and included interaction orders for one N-partite model.
#[derive(Clone, Debug)]
pub struct MultipartiteSpec {
    dims: Vec<usize>,
    /// `terms[j][l]` is `H_j^(l)`; superscript 0 is the local Hamiltonian.
    terms: Vec<BTreeMap<usize, HermitianMatrix>>,
    /// `couplings[l-2]` is `ε_{l-1}`, the constant of the order-`l` interaction.
    couplings: Vec<f64>,
    orders: Vec<usize>,
    max_dim: usize,
}

impl MultipartiteSpec {
    /// `couplings` must hold `ε_1 … ε_{N-1}`; `orders` selects which
    /// interaction orders `l ∈ {2, …, N}` actually enter the sum.
    pub fn new(
        dims: Vec<usize>,
        couplings: Vec<f64>,
        orders: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = dims.len();
        if n == 0 {
            return Err(Error::InvalidSpec("at least one subsystem required".into()));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidSpec("subsystem dimensions must be >= 1".into()));
        }
        if couplings.len() != n.saturating_sub(1) {
            return Err(Error::InvalidSpec(format!(
                "expected {} coupling constants for {} subsystems, got {}",
                n - 1,
                n,
                couplings.len()
            )));
        }
        if couplings.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("coupling constants must be finite".into()));
        }
        let mut orders: Vec<usize> = orders.into_iter().collect();
        orders.sort_unstable();
        orders.dedup();
        if orders.iter().any(|&l| l < 2 || l > n) {
            return Err(Error::InvalidSpec(format!(
                "interaction orders must lie in 2..={}, got {:?}",
                n, orders
            )));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total.checked_mul(d).ok_or(Error::DimensionOverflow {
                dim: usize::MAX,
                max: DEFAULT_MAX_DIM,
            })?;
        }
        if total > DEFAULT_MAX_DIM {
            return Err(Error::DimensionOverflow {
                dim: total,
                max: DEFAULT_MAX_DIM,
            });
        }
        Ok(Self {
            terms: vec![BTreeMap::new(); n],
            dims,
            couplings,
            orders,
            max_dim: DEFAULT_MAX_DIM,
        })
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Coupling constant `ε_{l-1}` for interaction order `l`.
    pub fn coupling_for_order(&self, order: usize) -> f64 {
        self.couplings[order - 2]
    }

    /// Registers `H_j^(superscript)`.
    pub fn set_term(
        &mut self,
        subsystem: usize,
        superscript: usize,
        m: HermitianMatrix,
    ) -> Result<()> {
        if subsystem >= self.dims.len() {
            return Err(Error::SlotOutOfRange {
                slot: subsystem,
                len: self.dims.len(),
            });
        }
        if m.dim() != self.dims[subsystem] {
            return Err(Error::DimensionMismatch {
                context: "multipartite term dimension",
                expected: self.dims[subsystem],
                found: m.dim(),
            });
        }
        self.terms[subsystem].insert(superscript, m);
        Ok(())
    }

    /// Registers one matrix for every superscript `0..N-1` of a subsystem
    /// (the `H^(0) = H^(1) = … ` simplification).
    pub fn set_shared_terms(&mut self, subsystem: usize, m: HermitianMatrix) -> Result<()> {
        for superscript in 0..self.dims.len() {
            self.set_term(subsystem, superscript, m.clone())?;
        }
        Ok(())
    }

    fn term(&self, subsystem: usize, superscript: usize) -> Result<&HermitianMatrix> {
        self.terms[subsystem]
            .get(&superscript)
            .ok_or(Error::MissingTerm {
                subsystem,
                order: superscript,
            })
    }
}

/// Observable selector: total energy, one subsystem's local energy, or a bare
/// k-partite interaction product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObservableSelector {
    Total,
    Local(usize),
    /// Strictly increasing subsystem indices; the interaction order is the length.
    Interaction(Vec<usize>),
}

impl ObservableSelector {
    fn validate(&self, spec: &MultipartiteSpec) -> Result<()> {
        let n = spec.n_subsystems();
        match self {
            Self::Total => Ok(()),
            Self::Local(j) => {
                if *j >= n {
                    Err(Error::SlotOutOfRange { slot: *j, len: n })
                } else {
                    Ok(())
                }
            }
            Self::Interaction(subset) => {
                if subset.len() < 2 || subset.len() > n {
                    return Err(Error::InvalidSpec(format!(
                        "interaction order {} outside 2..={}",
                        subset.len(),
                        n
                    )));
                }
                if !subset.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::InvalidSpec(
                        "interaction subsystems must be strictly increasing".into(),
                    ));
                }
                if let Some(&j) = subset.iter().find(|&&j| j >= n) {
                    return Err(Error::SlotOutOfRange { slot: j, len: n });
                }
                Ok(())
            }
        }
    }
}

fn interaction_term(
    spec: &MultipartiteSpec,
    subset: &[usize],
    superscript: usize,
) -> Result<HermitianMatrix> {
    let mut factors: Vec<Option<&HermitianMatrix>> = vec![None; spec.n_subsystems()];
    for &j in subset {
        factors[j] = Some(spec.term(j, superscript)?);
    }
    embed_product(&factors, &spec.dims, spec.max_dim)
}

/// Assembles the full Hamiltonian.
pub fn build_total(spec: &MultipartiteSpec) -> Result<HermitianMatrix> {
    let n = spec.n_subsystems();
    let total_dim = spec.total_dim();
    let mut acc = HermitianMatrix::zeros(total_dim);
    for j in 0..n {
        let embedded = interaction_term(spec, &[j], 0)?;
        debug_assert_eq!(embedded.dim(), total_dim);
        acc.add_assign_scaled(&embedded, 1.0);
    }
    for &order in spec.orders() {
        let eps = spec.coupling_for_order(order);
        for subset in (0..n).combinations(order) {
            let term = interaction_term(spec, &subset, order - 1)?;
            acc.add_assign_scaled(&term, eps);
        }
    }
    Ok(acc)
}

/// Builds the probe observable. Interaction selectors return the bare product
/// `⊗_{j∈S} H_j^(l-1)` without the coupling constant; use
/// [`build_interaction_scaled`] to include it.
pub fn build_observable(
    spec: &MultipartiteSpec,
    sel: &ObservableSelector,
) -> Result<HermitianMatrix> {
    sel.validate(spec)?;
    match sel {
        ObservableSelector::Total => build_total(spec),
        ObservableSelector::Local(j) => interaction_term(spec, &[*j], 0),
        ObservableSelector::Interaction(subset) => {
            interaction_term(spec, subset, subset.len() - 1)
        }
    }
}

/// Interaction observable including its coupling constant `ε_{l-1}`.
pub fn build_interaction_scaled(
    spec: &MultipartiteSpec,
    subset: &[usize],
) -> Result<HermitianMatrix> {
    let sel = ObservableSelector::Interaction(subset.to_vec());
    let bare = build_observable(spec, &sel)?;
    Ok(bare.scaled(spec.coupling_for_order(subset.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goe::{sample_goe, GoeSpec};
    use crate::linalg::{eigh_values, kron};

    fn goe(dim: usize, seed: u64) -> HermitianMatrix {
        sample_goe(&GoeSpec::new(dim, 1.0, seed).unwrap())
    }

    fn bipartite(eps: f64, seed: u64) -> MultipartiteSpec {
        let mut spec = MultipartiteSpec::new(vec![4, 4], vec![eps], [2]).unwrap();
        for j in 0..2 {
            spec.set_term(j, 0, goe(4, seed + j as u64)).unwrap();
            spec.set_term(j, 1, goe(4, seed + 10 + j as u64)).unwrap();
        }
        spec
    }

    #[test]
    fn single_subsystem_is_local_term() {
        let mut spec = MultipartiteSpec::new(vec![5], vec![], []).unwrap();
        let h1 = goe(5, 3);
        spec.set_term(0, 0, h1.clone()).unwrap();
        let h = build_total(&spec).unwrap();
        assert!(h.max_abs_diff(&h1) == 0.0);
    }

    #[test]
    fn decoupled_bipartite_spectrum_is_pairwise_sums() {
        let spec = bipartite(0.0, 20);
        let h = build_total(&spec).unwrap();
        let e1 = eigh_values(spec.term(0, 0).unwrap()).unwrap();
        let e2 = eigh_values(spec.term(1, 0).unwrap()).unwrap();
        let mut expect: Vec<f64> = e1
            .iter()
            .flat_map(|&a| e2.iter().map(move |&b| a + b))
            .collect();
        expect.sort_by(f64::total_cmp);
        let got = eigh_values(&h).unwrap();
        for (x, y) in got.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn built_hamiltonian_is_hermitian() {
        let spec = bipartite(2.5, 40);
        let h = build_total(&spec).unwrap();
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                assert!((h.get(i, j) - h.get(j, i).conj()).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn total_is_linear_in_couplings() {
        let free = bipartite(0.0, 60);
        let coupled = {
            let mut s = bipartite(0.0, 60);
            s.couplings = vec![3.0];
            s
        };
        let h0 = build_total(&free).unwrap();
        let h = build_total(&coupled).unwrap();
        let bare = build_observable(&free, &ObservableSelector::Interaction(vec![0, 1])).unwrap();
        // H(ε) - H(0) = ε · (bare interaction)
        let mut diff = h.clone();
        diff.add_assign_scaled(&h0, -1.0);
        let mut expect = HermitianMatrix::zeros(h.dim());
        expect.add_assign_scaled(&bare, 3.0);
        assert!(diff.max_abs_diff(&expect) <= 1e-12);
    }

    #[test]
    fn interaction_observable_is_bare_kron() {
        let spec = bipartite(7.0, 80);
        let x = build_observable(&spec, &ObservableSelector::Interaction(vec![0, 1])).unwrap();
        let expect = kron(spec.term(0, 1).unwrap(), spec.term(1, 1).unwrap()).unwrap();
        assert!(x.max_abs_diff(&expect) == 0.0);
        let scaled = build_interaction_scaled(&spec, &[0, 1]).unwrap();
        assert!(scaled.max_abs_diff(&expect.scaled(7.0)) <= 1e-15);
    }

    #[test]
    fn local_observable_spectrum_multiplicity() {
        let spec = bipartite(1.0, 100);
        let x = build_observable(&spec, &ObservableSelector::Local(0)).unwrap();
        let base = eigh_values(spec.term(0, 0).unwrap()).unwrap();
        let mut expect: Vec<f64> = base.iter().flat_map(|&v| vec![v; 4]).collect();
        expect.sort_by(f64::total_cmp);
        let got = eigh_values(&x).unwrap();
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn shared_terms_cover_all_orders() {
        let mut spec = MultipartiteSpec::new(vec![3, 3, 3], vec![1.0, 0.5], [2, 3]).unwrap();
        for j in 0..3 {
            spec.set_shared_terms(j, goe(3, 200 + j as u64)).unwrap();
        }
        let h = build_total(&spec).unwrap();
        assert_eq!(h.dim(), 27);
        let x3 = build_observable(&spec, &ObservableSelector::Interaction(vec![0, 1, 2])).unwrap();
        let expect = kron(
            &kron(spec.term(0, 2).unwrap(), spec.term(1, 2).unwrap()).unwrap(),
            spec.term(2, 2).unwrap(),
        )
        .unwrap();
        assert!(x3.max_abs_diff(&expect) == 0.0);
    }

    #[test]
    fn missing_term_error_names_subsystem_and_order() {
        let mut spec = MultipartiteSpec::new(vec![4, 4], vec![1.0], [2]).unwrap();
        spec.set_term(0, 0, goe(4, 1)).unwrap();
        spec.set_term(1, 0, goe(4, 2)).unwrap();
        spec.set_term(0, 1, goe(4, 3)).unwrap();
        match build_total(&spec) {
            Err(Error::MissingTerm {
                subsystem: 1,
                order: 1,
            }) => {}
            other => panic!("expected MissingTerm, got {other:?}"),
        }
    }

    #[test]
    fn selector_validation_errors() {
        let spec = bipartite(1.0, 300);
        assert!(matches!(
            build_observable(&spec, &ObservableSelector::Local(5)),
            Err(Error::SlotOutOfRange { .. })
        ));
        assert!(build_observable(
            &spec,
            &ObservableSelector::Interaction(vec![0, 1, 2])
        )
        .is_err());
        assert!(build_observable(&spec, &ObservableSelector::Interaction(vec![1, 0])).is_err());
    }
}
