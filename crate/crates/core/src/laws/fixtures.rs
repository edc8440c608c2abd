//! Registry of worked examples with their expected verdicts and values.
//!
//! A fixture is plain data: named input matrices (vectors are single
//! columns) and a list of probes, each with the expected outcome. The
//! registry round-trips through JSON, so an edited copy can be re-run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cmatrix::{abs_power, hermitian_eigen, inverse, loewner_geq, Matrix, C64};
use crate::error::{Error, Result};
use crate::norms::{numerical_radius_hilbert, NormSpec, INF};
use crate::ortho::{bj_definitional, bj_trace, disjoint_supports, isosceles};
use crate::parallel::{
    eigen_parallel_identity, linearly_dependent, parallel_definitional, parallel_identity_radius,
    vector_parallel,
};
use crate::DEFAULT_TOL;

/// Matrix expression over the fixture inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Name(String),
    Sum { sum: Box<[Term; 2]> },
    Product { product: Box<[Term; 2]> },
    Abs { abs: Box<Term> },
}

impl Term {
    pub fn name(s: &str) -> Self {
        Term::Name(s.to_string())
    }

    pub fn sum(a: Term, b: Term) -> Self {
        Term::Sum {
            sum: Box::new([a, b]),
        }
    }

    pub fn product(a: Term, b: Term) -> Self {
        Term::Product {
            product: Box::new([a, b]),
        }
    }

    pub fn abs(a: Term) -> Self {
        Term::Abs { abs: Box::new(a) }
    }

    pub fn eval(&self, inputs: &BTreeMap<String, Matrix>) -> Result<Matrix> {
        Ok(match self {
            Term::Name(n) => inputs
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("fixture has no input `{n}`")))?,
            Term::Sum { sum } => {
                let (a, b) = (sum[0].eval(inputs)?, sum[1].eval(inputs)?);
                if !a.same_shape(&b) {
                    return Err(Error::Shape("sum of differently shaped terms".into()));
                }
                &a + &b
            }
            Term::Product { product } => {
                let (a, b) = (product[0].eval(inputs)?, product[1].eval(inputs)?);
                if a.cols() != b.rows() {
                    return Err(Error::Shape("product of incompatible terms".into()));
                }
                &a * &b
            }
            Term::Abs { abs } => abs_power(&abs.eval(inputs)?, 1.0)?,
        })
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Term::Name(n) => write!(f, "{n}"),
            Term::Sum { sum } => write!(f, "({} + {})", sum[0], sum[1]),
            Term::Product { product } => write!(f, "{}{}", product[0], product[1]),
            Term::Abs { abs } => write!(f, "|{abs}|"),
        }
    }
}

/// A quantity computed from the inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "probe", rename_all = "snake_case")]
pub enum Probe {
    Bj {
        a: Term,
        b: Term,
        spec: NormSpec,
    },
    BjTrace {
        a: Term,
        b: Term,
        #[serde(with = "crate::norms::exponent")]
        p: f64,
    },
    Isosceles {
        a: Term,
        b: Term,
        #[serde(with = "crate::norms::exponent")]
        p: f64,
        complex: bool,
    },
    Disjoint {
        a: Term,
        b: Term,
    },
    /// Matrix parallelism, or vector parallelism when `spec` is a vector norm.
    Parallel {
        a: Term,
        b: Term,
        spec: NormSpec,
    },
    Dependent {
        a: Term,
        b: Term,
    },
    Norm {
        a: Term,
        spec: NormSpec,
    },
    /// `|tr(B* A)|`.
    TraceInner {
        b: Term,
        a: Term,
    },
    /// Eigenvalues of a Hermitian term, ascending.
    HermitianSpectrum {
        a: Term,
    },
    LoewnerGeq {
        p: Term,
        q: Term,
    },
    Invertible {
        a: Term,
    },
    NumericalRadius {
        a: Term,
    },
    RadiusParallelIdentity {
        a: Term,
        spec: NormSpec,
    },
    EigenParallelIdentity {
        a: Term,
        spec: NormSpec,
    },
}

impl Probe {
    fn describe(&self) -> String {
        match self {
            Probe::Bj { a, b, spec } => format!("{a} ⊥ {b} in {spec:?}"),
            Probe::BjTrace { a, b, p } => format!("[{b}, {a}] = 0 at p = {p}"),
            Probe::Isosceles { a, b, p, complex } => {
                format!(
                    "{a} isosceles-orthogonal to {b} at p = {p}{}",
                    if *complex { " (complex)" } else { "" }
                )
            }
            Probe::Disjoint { a, b } => format!("{a}, {b} have disjoint supports"),
            Probe::Parallel { a, b, spec } => format!("{a} ∥ {b} in {spec:?}"),
            Probe::Dependent { a, b } => format!("{a}, {b} linearly dependent"),
            Probe::Norm { a, spec } => format!("‖{a}‖ in {spec:?}"),
            Probe::TraceInner { b, a } => format!("|tr({b}* {a})|"),
            Probe::HermitianSpectrum { a } => format!("spectrum of {a}"),
            Probe::LoewnerGeq { p, q } => format!("{p} >= {q}"),
            Probe::Invertible { a } => format!("{a} invertible"),
            Probe::NumericalRadius { a } => format!("w({a})"),
            Probe::RadiusParallelIdentity { a, spec } => {
                format!("radius = norm for {a} in {spec:?}")
            }
            Probe::EigenParallelIdentity { a, spec } => format!("λ‖{a}‖ eigenvalue in {spec:?}"),
        }
    }

    fn evaluate(&self, inputs: &BTreeMap<String, Matrix>) -> Result<Observed> {
        let ev = |t: &Term| t.eval(inputs);
        Ok(match self {
            Probe::Bj { a, b, spec } => {
                Observed::Holds(bj_definitional(&ev(a)?, &ev(b)?, *spec, DEFAULT_TOL)?.holds)
            }
            Probe::BjTrace { a, b, p } => {
                Observed::Holds(bj_trace(&ev(a)?, &ev(b)?, *p, DEFAULT_TOL)?)
            }
            Probe::Isosceles { a, b, p, complex } => {
                Observed::Holds(isosceles(&ev(a)?, &ev(b)?, *p, *complex, DEFAULT_TOL)?.holds)
            }
            Probe::Disjoint { a, b } => {
                Observed::Holds(disjoint_supports(&ev(a)?, &ev(b)?)?.disjoint())
            }
            Probe::Parallel { a, b, spec } => {
                let (a, b) = (ev(a)?, ev(b)?);
                let v = match spec {
                    NormSpec::VectorLp(_) | NormSpec::VectorMax => {
                        vector_parallel(a.as_slice(), b.as_slice(), *spec, DEFAULT_TOL)?
                    }
                    _ => parallel_definitional(&a, &b, *spec, DEFAULT_TOL)?,
                };
                Observed::Holds(v.holds)
            }
            Probe::Dependent { a, b } => Observed::Holds(linearly_dependent(&ev(a)?, &ev(b)?)?),
            Probe::Norm { a, spec } => Observed::Value(spec.norm(&ev(a)?)?),
            Probe::TraceInner { b, a } => {
                Observed::Value(ev(b)?.adjoint().trace_of_product(&ev(a)?).norm())
            }
            Probe::HermitianSpectrum { a } => Observed::Values(hermitian_eigen(&ev(a)?)?.values),
            Probe::LoewnerGeq { p, q } => Observed::Holds(loewner_geq(&ev(p)?, &ev(q)?, 1e-12)?),
            Probe::Invertible { a } => Observed::Holds(match inverse(&ev(a)?) {
                Ok(_) => true,
                Err(Error::Precondition(_)) => false,
                Err(e) => return Err(e),
            }),
            Probe::NumericalRadius { a } => {
                Observed::Value(numerical_radius_hilbert(&ev(a)?)?.value)
            }
            Probe::RadiusParallelIdentity { a, spec } => {
                Observed::Holds(parallel_identity_radius(&ev(a)?, *spec, DEFAULT_TOL)?.holds)
            }
            Probe::EigenParallelIdentity { a, spec } => {
                Observed::Holds(eigen_parallel_identity(&ev(a)?, *spec, DEFAULT_TOL)?.is_some())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Holds(bool),
    Value {
        value: f64,
        tol: f64,
    },
    /// Sorted values compared entrywise.
    Values {
        values: Vec<f64>,
        tol: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observed {
    Holds(bool),
    Value(f64),
    Values(Vec<f64>),
    Error(String),
}

impl Expected {
    fn matches(&self, obs: &Observed) -> bool {
        match (self, obs) {
            (Expected::Holds(e), Observed::Holds(o)) => e == o,
            (Expected::Value { value, tol }, Observed::Value(o)) => (o - value).abs() <= *tol,
            (Expected::Values { values, tol }, Observed::Values(o)) => {
                let mut want = values.clone();
                want.sort_by(f64::total_cmp);
                let mut got = o.clone();
                got.sort_by(f64::total_cmp);
                want.len() == got.len() && want.iter().zip(&got).all(|(w, g)| (w - g).abs() <= *tol)
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub probe: Probe,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    /// Where the example comes from, in words.
    pub anchor: String,
    pub inputs: BTreeMap<String, Matrix>,
    pub expectations: Vec<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub description: String,
    pub expected: Expected,
    pub observed: Observed,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl Fixture {
    pub fn run(&self) -> FixtureOutcome {
        let checks: Vec<CheckOutcome> = self
            .expectations
            .iter()
            .map(|e| {
                let observed = e
                    .probe
                    .evaluate(&self.inputs)
                    .unwrap_or_else(|err| Observed::Error(err.to_string()));
                CheckOutcome {
                    description: e.probe.describe(),
                    passed: e.expected.matches(&observed),
                    expected: e.expected.clone(),
                    observed,
                }
            })
            .collect();
        FixtureOutcome {
            name: self.name.clone(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

fn n(s: &str) -> Term {
    Term::name(s)
}

fn holds(probe: Probe, h: bool) -> Expectation {
    Expectation {
        probe,
        expected: Expected::Holds(h),
    }
}

fn value(probe: Probe, value: f64, tol: f64) -> Expectation {
    Expectation {
        probe,
        expected: Expected::Value { value, tol },
    }
}

fn inputs(list: &[(&str, Matrix)]) -> BTreeMap<String, Matrix> {
    list.iter()
        .map(|(k, m)| (k.to_string(), m.clone()))
        .collect()
}

fn vector(v: &[f64]) -> Matrix {
    Matrix::column(&v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
}

/// The seven worked examples.
pub fn fixtures() -> Vec<Fixture> {
    let id2 = Matrix::identity(2);
    let e11 = Matrix::diag_real(&[1.0, 0.0]);
    let mut out = Vec::new();

    let mut rem_diag = vec![holds(
        Probe::Disjoint {
            a: n("I"),
            b: n("A"),
        },
        false,
    )];
    for p in [1.0, 1.5, 2.0, 3.0, INF] {
        rem_diag.push(holds(
            Probe::Bj {
                a: n("I"),
                b: n("A"),
                spec: NormSpec::Schatten(p),
            },
            true,
        ));
    }
    for p in [1.5, 2.0, 3.0] {
        rem_diag.push(holds(
            Probe::BjTrace {
                a: n("I"),
                b: n("A"),
                p,
            },
            true,
        ));
    }
    out.push(Fixture {
        name: "rem-diag".into(),
        anchor: "identity against the traceless diagonal diag(1/2, -1/2): orthogonal in every p-norm, supports not disjoint"
            .into(),
        inputs: inputs(&[("I", id2.clone()), ("A", Matrix::diag_real(&[0.5, -0.5]))]),
        expectations: rem_diag,
    });

    out.push(Fixture {
        name: "rem-trace-norm".into(),
        anchor: "diag(1,0) is orthogonal to the identity in the trace norm without disjoint supports; isosceles fails"
            .into(),
        inputs: inputs(&[("I", id2.clone()), ("B", e11.clone())]),
        expectations: vec![
            holds(
                Probe::Bj {
                    a: n("B"),
                    b: n("I"),
                    spec: NormSpec::Schatten(1.0),
                },
                true,
            ),
            // the reverse direction is decided independently: tr(B) ≠ 0
            holds(
                Probe::Bj {
                    a: n("I"),
                    b: n("B"),
                    spec: NormSpec::Schatten(1.0),
                },
                false,
            ),
            holds(Probe::Disjoint { a: n("I"), b: n("B") }, false),
            holds(
                Probe::Isosceles {
                    a: n("B"),
                    b: n("I"),
                    p: 1.0,
                    complex: false,
                },
                false,
            ),
        ],
    });

    let sqrt2 = std::f64::consts::SQRT_2;
    let mut th0005 = vec![
        value(
            Probe::TraceInner {
                b: n("B"),
                a: n("A"),
            },
            0.0,
            1e-12,
        ),
        Expectation {
            probe: Probe::HermitianSpectrum {
                a: Term::abs(Term::sum(n("B"), n("A"))),
            },
            expected: Expected::Values {
                values: vec![sqrt2 - 1.0, sqrt2 + 1.0],
                tol: 1e-9,
            },
        },
        holds(
            Probe::LoewnerGeq {
                p: Term::abs(Term::sum(n("B"), n("A"))),
                q: Term::abs(n("B")),
            },
            false,
        ),
        holds(Probe::Invertible { a: n("A") }, false),
    ];
    for p in [1.0, 1.5, 2.0, 3.0] {
        th0005.push(holds(
            Probe::Bj {
                a: n("B"),
                b: n("A"),
                spec: NormSpec::Schatten(p),
            },
            true,
        ));
    }
    out.push(Fixture {
        name: "th0005-example".into(),
        anchor: "B = I, A = [[1,1],[-1,-1]]: trace-orthogonal, A singular, B ⊥ A, yet |B + A| is not above |B|".into(),
        inputs: inputs(&[
            ("B", id2.clone()),
            ("A", Matrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, -1.0]])),
        ]),
        expectations: th0005,
    });

    let sum = || Term::sum(n("A"), n("I"));
    out.push(Fixture {
        name: "p1-parallel".into(),
        anchor: "diag(1,0) and I are parallel in the trace and operator norms though independent"
            .into(),
        inputs: inputs(&[("A", e11.clone()), ("I", id2.clone())]),
        expectations: vec![
            value(
                Probe::Norm {
                    a: sum(),
                    spec: NormSpec::Schatten(1.0),
                },
                3.0,
                1e-12,
            ),
            value(
                Probe::Norm {
                    a: sum(),
                    spec: NormSpec::Schatten(INF),
                },
                2.0,
                1e-12,
            ),
            holds(
                Probe::Parallel {
                    a: n("A"),
                    b: n("I"),
                    spec: NormSpec::Schatten(1.0),
                },
                true,
            ),
            holds(
                Probe::Parallel {
                    a: n("A"),
                    b: n("I"),
                    spec: NormSpec::Schatten(INF),
                },
                true,
            ),
            holds(
                Probe::Parallel {
                    a: n("A"),
                    b: n("I"),
                    spec: NormSpec::Schatten(2.0),
                },
                false,
            ),
            holds(
                Probe::Dependent {
                    a: n("A"),
                    b: n("I"),
                },
                false,
            ),
        ],
    });

    out.push(Fixture {
        name: "maxnorm-vectors".into(),
        anchor: "(1,0) and (1,1) in the max-norm plane: parallel with λ = 1".into(),
        inputs: inputs(&[("x", vector(&[1.0, 0.0])), ("y", vector(&[1.0, 1.0]))]),
        expectations: vec![
            value(
                Probe::Norm {
                    a: Term::sum(n("x"), n("y")),
                    spec: NormSpec::VectorMax,
                },
                2.0,
                1e-12,
            ),
            holds(
                Probe::Parallel {
                    a: n("x"),
                    b: n("y"),
                    spec: NormSpec::VectorMax,
                },
                true,
            ),
            holds(
                Probe::Parallel {
                    a: n("x"),
                    b: n("y"),
                    spec: NormSpec::VectorLp(2.0),
                },
                false,
            ),
        ],
    });

    let image = |v: &str| Term::product(n("A"), n(v));
    out.push(Fixture {
        name: "maxnorm-op".into(),
        anchor: "A(x, y) = (x + y, x - y)/2 on the max-norm plane: (1,-1) ∥ (-1,-1) in the norming set, images not parallel"
            .into(),
        inputs: inputs(&[
            ("A", Matrix::from_real_rows(&[&[0.5, 0.5], &[0.5, -0.5]])),
            ("x", vector(&[1.0, -1.0])),
            ("y", vector(&[-1.0, -1.0])),
        ]),
        expectations: vec![
            value(
                Probe::Norm {
                    a: n("A"),
                    spec: NormSpec::InducedLp(INF),
                },
                1.0,
                1e-12,
            ),
            value(
                Probe::Norm {
                    a: image("x"),
                    spec: NormSpec::VectorMax,
                },
                1.0,
                1e-12,
            ),
            value(
                Probe::Norm {
                    a: image("y"),
                    spec: NormSpec::VectorMax,
                },
                1.0,
                1e-12,
            ),
            holds(
                Probe::Parallel {
                    a: n("x"),
                    b: n("y"),
                    spec: NormSpec::VectorMax,
                },
                true,
            ),
            holds(
                Probe::Parallel {
                    a: image("x"),
                    b: image("y"),
                    spec: NormSpec::VectorMax,
                },
                false,
            ),
        ],
    });

    out.push(Fixture {
        name: "minus-identity".into(),
        anchor: "-I is normaloid and parallel to I (with λ = -1) although ‖-I + I‖ ≠ ‖-I‖ + 1"
            .into(),
        inputs: inputs(&[("A", id2.scale_real(-1.0)), ("I", id2)]),
        expectations: vec![
            value(Probe::NumericalRadius { a: n("A") }, 1.0, 1e-12),
            value(
                Probe::Norm {
                    a: Term::sum(n("A"), n("I")),
                    spec: NormSpec::Schatten(INF),
                },
                0.0,
                1e-12,
            ),
            holds(
                Probe::RadiusParallelIdentity {
                    a: n("A"),
                    spec: NormSpec::spectral(),
                },
                true,
            ),
            holds(
                Probe::EigenParallelIdentity {
                    a: n("A"),
                    spec: NormSpec::spectral(),
                },
                true,
            ),
            holds(
                Probe::Parallel {
                    a: n("A"),
                    b: n("I"),
                    spec: NormSpec::spectral(),
                },
                true,
            ),
        ],
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_reproduces() {
        let all = fixtures();
        assert_eq!(all.len(), 7);
        for f in &all {
            let r = f.run();
            assert!(
                r.passed,
                "{}: {:#?}",
                f.name,
                r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn json_round_trip_and_corruption() {
        let all = fixtures();
        let text = serde_json::to_string(&all).unwrap();
        let mut back: Vec<Fixture> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, all);
        back[3].expectations[0].expected = Expected::Value {
            value: 2.5,
            tol: 1e-12,
        };
        let r = back[3].run();
        assert!(!r.passed);
        assert_eq!(r.name, "p1-parallel");
    }
}
