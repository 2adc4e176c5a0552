//! Python bindings: the `zjkit` extension module.
//!
//! Exposes Cayley-table groups, subgroups, the Thompson-subgroup
//! machinery, the replacement construction, the p-local predicates and a
//! campaign entry point. Build as a cdylib and import as `zjkit`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use zjkit_core::build::{self, Construction};
use zjkit_core::fusion::{self, PrimeContext};
use zjkit_core::functors::{BaseFunctor, SubgroupFunctor};
use zjkit_core::group::Elem;
use zjkit_core::subgroup::{self, Subgroup};
use zjkit_core::thompson::{self, FamilyKind};
use zjkit_core::{iso, lattice, section, sylow};

fn kernel_err(e: zjkit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<FamilyKind> {
    match kind {
        "o" => Ok(FamilyKind::Order),
        "r" => Ok(FamilyKind::Rank),
        "e" => Ok(FamilyKind::Elementary),
        _ => Err(PyValueError::new_err(format!("unknown family kind {kind:?}, want o/r/e"))),
    }
}

fn parse_base(base: &str) -> PyResult<BaseFunctor> {
    for b in BaseFunctor::ALL {
        if b.label() == base {
            return Ok(b);
        }
    }
    Err(PyValueError::new_err(format!(
        "unknown base functor {base:?}, want one of J_x/ZJ_x/OmegaZJ_x for x in o/r/e"
    )))
}

fn elems_u16(elems: Vec<u32>) -> Vec<Elem> {
    elems.into_iter().map(|e| e as Elem).collect()
}

/// A finite group as an immutable multiplication table.
#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: zjkit_core::Group,
}

/// A subgroup: a sorted set of element indices inside its parent group.
#[pyclass(name = "Subgroup", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySubgroup {
    inner: Subgroup,
}

impl PyGroup {
    fn whole(&self) -> Subgroup {
        Subgroup::whole(&self.inner)
    }

    fn sub(&self, elems: Vec<u32>) -> PyResult<Subgroup> {
        Subgroup::from_elems(&self.inner, elems_u16(elems)).map_err(kernel_err)
    }

    fn ctx(&self, p: u64) -> PyResult<PrimeContext> {
        PrimeContext::new(&self.inner, p).map_err(kernel_err)
    }
}

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::cyclic(n).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn elementary_abelian(p: u64, k: u32) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::elementary_abelian(p, k).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn dihedral(n: usize) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::dihedral(n).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn quaternion(n: usize) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::quaternion(n).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn heisenberg(p: u64) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::heisenberg(p).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn wreath_cp_cp(p: u64) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::wreath_cp_cp(p).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn special_linear2(p: u64) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::special_linear2(p).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn qd(p: u64) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::qd(p).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn symmetric(n: usize) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::symmetric(n).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn alternating(n: usize) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::alternating(n).map_err(kernel_err)? })
    }

    #[staticmethod]
    fn direct_product(a: &PyGroup, b: &PyGroup) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: build::direct_product(&a.inner, &b.inner).map_err(kernel_err)? })
    }

    /// Builds from the JSON group-file schema (kinds: cayley, permgens,
    /// construction).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: zjkit_core::io::group_from_json(text).map_err(kernel_err)? })
    }

    /// Builds from a construction descriptor in JSON, e.g.
    /// `{"family": "qd", "p": 3}`.
    #[staticmethod]
    fn from_construction(text: &str) -> PyResult<PyGroup> {
        let c: Construction = serde_json_from(text)?;
        Ok(PyGroup { inner: build::build(&c).map_err(kernel_err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({} | {})", self.inner.name(), self.inner.order())
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.inner.mul(a as Elem, b as Elem) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        self.inner.inv(a as Elem) as u32
    }

    /// `a^g = g^{-1} a g`.
    fn conj(&self, a: u32, g: u32) -> u32 {
        self.inner.conj(a as Elem, g as Elem) as u32
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    fn comm(&self, a: u32, b: u32) -> u32 {
        self.inner.comm(a as Elem, b as Elem) as u32
    }

    fn order_of(&self, a: u32) -> u32 {
        self.inner.order_of(a as Elem)
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        self.inner
            .conjugacy_classes()
            .iter()
            .map(|c| c.iter().map(|&e| e as u32).collect())
            .collect()
    }

    /// Smallest subgroup containing the seed elements.
    fn closure(&self, seed: Vec<u32>) -> PySubgroup {
        PySubgroup { inner: subgroup::closure(&self.inner, &elems_u16(seed)) }
    }

    fn subgroup(&self, elems: Vec<u32>) -> PyResult<PySubgroup> {
        Ok(PySubgroup { inner: self.sub(elems)? })
    }

    fn trivial_subgroup(&self) -> PySubgroup {
        PySubgroup { inner: Subgroup::trivial(&self.inner) }
    }

    fn whole_subgroup(&self) -> PySubgroup {
        PySubgroup { inner: self.whole() }
    }

    fn center(&self) -> PySubgroup {
        PySubgroup { inner: subgroup::center(&self.whole()) }
    }

    fn centralizer(&self, elems: Vec<u32>) -> PySubgroup {
        PySubgroup { inner: subgroup::centralizer(&self.whole(), &elems_u16(elems)) }
    }

    fn normalizer(&self, s: &PySubgroup) -> PySubgroup {
        PySubgroup { inner: subgroup::normalizer(&self.whole(), &s.inner) }
    }

    fn commutator_subgroup(&self, x: &PySubgroup, y: &PySubgroup) -> PySubgroup {
        PySubgroup { inner: subgroup::commutator_subgroup(&self.inner, &x.inner, &y.inner) }
    }

    fn sylow(&self, p: u64) -> PySubgroup {
        PySubgroup { inner: sylow::sylow(&self.whole(), p) }
    }

    fn p_core(&self, p: u64) -> PySubgroup {
        PySubgroup { inner: sylow::p_core(&self.whole(), p) }
    }

    fn p_prime_core(&self, p: u64) -> PySubgroup {
        PySubgroup { inner: sylow::p_prime_core(&self.inner, p) }
    }

    fn all_subgroups(&self) -> PyResult<Vec<PySubgroup>> {
        Ok(lattice::all_subgroups(&self.inner)
            .map_err(kernel_err)?
            .into_iter()
            .map(|s| PySubgroup { inner: s })
            .collect())
    }

    fn normal_subgroups(&self) -> PyResult<Vec<PySubgroup>> {
        Ok(lattice::normal_subgroups_of(&self.whole())
            .map_err(kernel_err)?
            .into_iter()
            .map(|s| PySubgroup { inner: s })
            .collect())
    }

    /// Quotient `top/bottom` as a standalone group.
    fn quotient(&self, top: &PySubgroup, bottom: &PySubgroup) -> PyResult<PyGroup> {
        let sect = section::quotient(&top.inner, &bottom.inner).map_err(kernel_err)?;
        Ok(PyGroup { inner: sect.quotient().clone() })
    }

    /// Isomorphism test; returns the element-image list on success.
    fn is_isomorphic(&self, other: &PyGroup) -> PyResult<Option<Vec<u32>>> {
        Ok(iso::is_isomorphic(&self.inner, &other.inner)
            .map_err(kernel_err)?
            .map(|w| w.images.iter().map(|&e| e as u32).collect()))
    }

    /// `(stable, witness)`: witness is `(subgroup_elems, g)` on failure.
    fn is_p_stable(&self, p: u64) -> PyResult<(bool, Option<(Vec<u32>, u32)>)> {
        let out = fusion::is_p_stable(&self.inner, p).map_err(kernel_err)?;
        Ok((
            out.stable,
            out.witness
                .map(|w| (w.subgroup.iter().map(|&e| e as u32).collect(), w.g as u32)),
        ))
    }

    fn is_p_constrained(&self, p: u64) -> PyResult<bool> {
        fusion::is_p_constrained(&self.inner, p).map_err(kernel_err)
    }

    fn is_p_nilpotent(&self, p: u64) -> (bool, Option<PySubgroup>) {
        let (ok, w) = fusion::is_p_nilpotent(&self.inner, p);
        (ok, w.map(|s| PySubgroup { inner: s }))
    }

    /// `(free, witness)`: witness is `(top_elems, bottom_elems)` of a
    /// section isomorphic to Qd(p) when not free.
    fn is_qdp_free(&self, p: u64) -> PyResult<(bool, Option<(Vec<u32>, Vec<u32>)>)> {
        let out = fusion::is_qdp_free(&self.inner, p).map_err(kernel_err)?;
        Ok((
            out.free,
            out.witness.map(|(h, k)| {
                (
                    h.elems().iter().map(|&e| e as u32).collect(),
                    k.elems().iter().map(|&e| e as u32).collect(),
                )
            }),
        ))
    }

    /// Exact strong-closure check for a subset of the Sylow p-subgroup.
    fn is_strongly_closed(&self, p: u64, d: Vec<u32>) -> PyResult<(bool, Option<(u32, u32)>)> {
        let ctx = self.ctx(p)?;
        let (ok, w) = fusion::is_strongly_closed(&ctx, &elems_u16(d)).map_err(kernel_err)?;
        Ok((ok, w.map(|(u, g)| (u as u32, g as u32))))
    }

    /// Does `n` control strong G-fusion in the (canonical) Sylow
    /// p-subgroup?
    fn controls_strong_fusion(
        &self,
        p: u64,
        n: &PySubgroup,
    ) -> PyResult<(bool, Option<(Vec<u32>, u32)>)> {
        let ctx = self.ctx(p)?;
        let (ok, w) = fusion::controls_strong_fusion(&ctx, &n.inner).map_err(kernel_err)?;
        Ok((
            ok,
            w.map(|w| (w.subgroup.iter().map(|&e| e as u32).collect(), w.g as u32)),
        ))
    }

    /// Abelian replacement: returns the replacing subgroup `A*`.
    fn replace(&self, a: &PySubgroup, b: &PySubgroup) -> PyResult<PySubgroup> {
        let whole = self.whole();
        let result =
            zjkit_core::replacement::replace(&whole, &a.inner, &b.inner).map_err(kernel_err)?;
        Ok(PySubgroup { inner: result.a_star })
    }

    /// Evaluates the subscripted conjugacy functor `W_D` at `v`.
    fn w_d(&self, p: u64, base: &str, d: Vec<u32>, v: &PySubgroup) -> PyResult<PySubgroup> {
        let ctx = self.ctx(p)?;
        let w = SubgroupFunctor::subscripted(&ctx, parse_base(base)?, elems_u16(d))
            .map_err(kernel_err)?;
        Ok(PySubgroup { inner: w.apply(&v.inner).map_err(kernel_err)?.output })
    }
}

fn serde_json_from<T: serde::de::DeserializeOwned>(text: &str) -> PyResult<T> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

use zjkit_harness::campaign;
use zjkit_harness::corpus;
use zjkit_harness::verify::Toggles;

#[pymethods]
impl PySubgroup {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn elements(&self) -> Vec<u32> {
        self.inner.elems().iter().map(|&e| e as u32).collect()
    }

    fn __repr__(&self) -> String {
        format!("Subgroup(order {} of {})", self.inner.order(), self.inner.parent().name())
    }

    fn __eq__(&self, other: &PySubgroup) -> bool {
        self.inner == other.inner
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_elementary_abelian(&self) -> bool {
        self.inner.is_elementary_abelian()
    }

    fn is_subset_of(&self, other: &PySubgroup) -> bool {
        self.inner.is_subset_of(&other.inner)
    }

    fn is_normal_in(&self, other: &PySubgroup) -> bool {
        self.inner.is_normal_in(&other.inner)
    }

    fn conjugate(&self, g: u32) -> PySubgroup {
        PySubgroup { inner: self.inner.conjugate(g as Elem) }
    }

    fn intersection(&self, other: &PySubgroup) -> PySubgroup {
        PySubgroup { inner: self.inner.intersection(&other.inner) }
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn center(&self) -> PySubgroup {
        PySubgroup { inner: subgroup::center(&self.inner) }
    }

    /// `J_kind` of this p-group, kind in {"o", "r", "e"}.
    fn thompson_subgroup(&self, kind: &str) -> PyResult<PySubgroup> {
        Ok(PySubgroup {
            inner: thompson::thompson_subgroup(&self.inner, parse_kind(kind)?)
                .map_err(kernel_err)?,
        })
    }

    /// Members of the abelian family of the given kind.
    fn abelian_family(&self, kind: &str) -> PyResult<(u64, Vec<PySubgroup>)> {
        let fam =
            thompson::abelian_family(&self.inner, parse_kind(kind)?).map_err(kernel_err)?;
        Ok((fam.score, fam.members.into_iter().map(|m| PySubgroup { inner: m }).collect()))
    }

    fn omega(&self) -> PyResult<PySubgroup> {
        Ok(PySubgroup { inner: thompson::omega(&self.inner).map_err(kernel_err)? })
    }

    fn rank_and_exponent(&self) -> PyResult<(u32, u64)> {
        thompson::rank_and_exponent(&self.inner).map_err(kernel_err)
    }

    /// Extracts the subgroup as a standalone group.
    fn as_group(&self) -> PyResult<PyGroup> {
        let (table, _) = self.inner.as_table().map_err(kernel_err)?;
        Ok(PyGroup { inner: table })
    }
}

/// Builds the default corpus, runs the selected checks and returns a
/// summary dict; raises if any record violates the hypotheses/conclusion
/// invariant.
#[pyfunction]
#[pyo3(signature = (max_order = 128, checks = vec!["all".to_string()]))]
fn run_campaign(py: Python<'_>, max_order: usize, checks: Vec<String>) -> PyResult<Py<PyDict>> {
    let cfg = corpus::CorpusConfig { max_order, ..Default::default() };
    let entries =
        corpus::build_corpus(&cfg).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let campaign_cfg = campaign::CampaignConfig {
        checks: campaign::parse_checks(&checks)
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
        d_mode: campaign::DMode::Full,
        jobs: 0,
        timing: false,
        toggles: Toggles::NONE,
    };
    let outcome = campaign::run_campaign(&entries, &campaign_cfg)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let summary = zjkit_harness::report::summarize(&outcome.records);
    let dict = PyDict::new(py);
    dict.set_item("records", outcome.records.len())?;
    dict.set_item("violations", outcome.violations)?;
    let per_check = PyDict::new(py);
    for (check, s) in &summary {
        let row = PyDict::new(py);
        row.set_item("records", s.records)?;
        row.set_item("hypotheses_satisfied", s.hypotheses_satisfied)?;
        row.set_item("conclusion_true", s.conclusion_true)?;
        row.set_item("vacuous", s.vacuous)?;
        row.set_item("violations", s.violations)?;
        per_check.set_item(check, row)?;
    }
    dict.set_item("checks", per_check)?;
    Ok(dict.into())
}

#[pymodule]
fn zjkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PySubgroup>()?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    Ok(())
}
