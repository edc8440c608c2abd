//! Acceptance run: every criterion prints one PASS/FAIL line and the process
//! exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use schatten_lab::cmatrix::{abs_power, hermitian_eigen, loewner_geq, Matrix, C64};
use schatten_lab::laws::{self, run_suite, truncated_shift, SuiteId, SuiteReport};
use schatten_lab::norms::{numerical_radius_hilbert, schatten_norm, NormSpec, INF};
use schatten_lab::ortho::bj_definitional;
use schatten_lab::parallel::{eigen_parallel_identity, parallel_definitional, vector_parallel};
use schatten_lab::DEFAULT_TOL;

const SEED: u64 = 42;

struct Run {
    report: SuiteReport,
    secs: f64,
}

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            detail: String::new(),
        }
    }

    fn note(&mut self, ok: bool, what: impl AsRef<str>) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(what.as_ref());
        if !ok {
            self.detail.push_str(" [failed]");
        }
        self.ok &= ok;
    }

    fn suite(&mut self, runs: &BTreeMap<SuiteId, Run>, id: SuiteId, trials: usize) {
        let r = &runs[&id];
        let mut what = format!(
            "{id} {}/{} in {:.2} s",
            r.report.passes, r.report.trials, r.secs
        );
        if let Some(f) = r.report.failures.first() {
            what.push_str(&format!(
                " (first failure: offset {} [{}] {})",
                f.offset, f.leg, f.check
            ));
        }
        self.note(r.report.passed() && r.report.trials == trials, what);
    }

    fn within(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.note(
            (got - want).abs() <= tol,
            format!("{what} = {got:.12} (want {want:.12} ± {tol:e})"),
        );
    }
}

fn real(rows: &[&[f64]]) -> Matrix {
    Matrix::from_real_rows(rows)
}

fn fixture_suite() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let list = laws::fixtures();
    let outcomes: Vec<_> = list.iter().map(|f| f.run()).collect();
    let passed = outcomes.iter().filter(|r| r.passed).count();
    let failing: Vec<&str> = outcomes
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    o.note(
        list.len() == 7 && passed == 7,
        format!("{passed}/{} fixtures {failing:?}", list.len()),
    );

    let a = real(&[&[1.0, 0.0], &[0.0, 0.0]]);
    let id = Matrix::identity(2);
    let sum = &a + &id;
    o.within(
        "‖diag(1,0)+I‖₁",
        schatten_norm(&sum, 1.0).unwrap(),
        3.0,
        1e-12,
    );
    o.within(
        "‖diag(1,0)+I‖∞",
        schatten_norm(&sum, INF).unwrap(),
        2.0,
        1e-12,
    );

    let traceless = real(&[&[0.5, 0.0], &[0.0, -0.5]]);
    let all_p = [1.0, 1.5, 2.0, 3.0, INF].iter().all(|&p| {
        bj_definitional(&id, &traceless, NormSpec::Schatten(p), DEFAULT_TOL)
            .unwrap()
            .holds
    });
    o.note(all_p, "I ⊥ diag(1/2,-1/2) at p in {1,1.5,2,3,∞}");

    let b = Matrix::identity(2);
    let a = real(&[&[1.0, 1.0], &[-1.0, -1.0]]);
    let tr = (&b.adjoint() * &a).trace();
    o.note(tr.norm() <= 1e-12, format!("tr(B*A) = {:.1e}", tr.norm()));
    let m = abs_power(&(&b + &a), 1.0).unwrap();
    o.note(!loewner_geq(&m, &b, 1e-12).unwrap(), "|B+A| >= I is false");
    let mut eig = hermitian_eigen(&m).unwrap().values;
    eig.sort_by(f64::total_cmp);
    let s = std::f64::consts::SQRT_2;
    o.note(
        (eig[0] - (s - 1.0)).abs() <= 1e-9 && (eig[1] - (s + 1.0)).abs() <= 1e-9,
        format!("eigenvalues of |B+A| = {{{:.12}, {:.12}}}", eig[0], eig[1]),
    );

    let x = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let y = [C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
    let max = vector_parallel(&x, &y, NormSpec::VectorMax, DEFAULT_TOL).unwrap();
    let l2 = vector_parallel(&x, &y, NormSpec::VectorLp(2.0), DEFAULT_TOL).unwrap();
    o.note(
        max.holds && !l2.holds,
        "(1,0) ∥ (1,1) in max norm, not in ℓ2",
    );

    let secs = start.elapsed().as_secs_f64();
    o.note(secs < 1.0, format!("{secs:.3} s"));
    o
}

fn jordan_and_normal(runs: &BTreeMap<SuiteId, Run>) -> Outcome {
    let mut o = Outcome::new();
    o.suite(runs, SuiteId::S11, 200);
    let n = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
    o.within(
        "w(Jordan)",
        numerical_radius_hilbert(&n).unwrap().value,
        0.5,
        1e-9,
    );
    let v =
        parallel_definitional(&n, &Matrix::identity(2), NormSpec::spectral(), DEFAULT_TOL).unwrap();
    o.note(!v.holds, "Jordan block not parallel to I");
    o.within("max ‖N+λI‖", v.achieved, (1.0 + 5f64.sqrt()) / 2.0, 1e-7);
    o
}

fn shifts(runs: &BTreeMap<SuiteId, Run>) -> Outcome {
    let mut o = Outcome::new();
    o.suite(runs, SuiteId::S12, 300);
    let mut worst = 0.0f64;
    let mut all = true;
    for k in 2..=8 {
        let s = truncated_shift(k);
        let id = Matrix::identity(k);
        let none = eigen_parallel_identity(&s, NormSpec::spectral(), DEFAULT_TOL)
            .unwrap()
            .is_none();
        let not_par = !parallel_definitional(&s, &id, NormSpec::spectral(), DEFAULT_TOL)
            .unwrap()
            .holds;
        let w = numerical_radius_hilbert(&s).unwrap().value;
        let err = (w - (std::f64::consts::PI / (k + 1) as f64).cos()).abs();
        worst = worst.max(err);
        all &= none && not_par && err <= 1e-6;
    }
    o.note(
        all,
        format!("shifts n = 2..8 empty and not parallel, max |w - cos(π/(n+1))| = {worst:.1e}"),
    );
    o
}

fn main() -> ExitCode {
    let mut runs = BTreeMap::new();
    for id in SuiteId::ALL {
        let config = id.default_config(SEED);
        let start = Instant::now();
        let report = run_suite(id, &config).expect("default configs are valid");
        runs.insert(
            id,
            Run {
                report,
                secs: start.elapsed().as_secs_f64(),
            },
        );
    }
    let total: f64 = runs.values().map(|r| r.secs).sum();

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("fixture suite", fixture_suite()));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S1, 200);
    o.note(runs[&SuiteId::S1].secs < 10.0, "under 10 s");
    results.push(("S1 Clarkson-McCarthy", o));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S2, 200);
    o.suite(&runs, SuiteId::S3, 150);
    o.note(
        runs[&SuiteId::S2].secs + runs[&SuiteId::S3].secs < 30.0,
        "under 30 s",
    );
    results.push(("S2/S3 disjointness and BJ on the positive cone", o));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S5, 200);
    results.push(("S5 trace test and semi-inner-product axioms", o));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S6, 200);
    results.push(("S6 orthogonality to the identity", o));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S9, 300);
    o.suite(&runs, SuiteId::S10, 200);
    results.push(("S9/S10 parallelism and dependence", o));

    results.push(("S11 numerical radius", jordan_and_normal(&runs)));
    results.push(("S12 eigenvalue criterion and shifts", shifts(&runs)));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S13, 300);
    results.push(("S13 nilpotent powers and projections", o));

    let mut o = Outcome::new();
    o.suite(&runs, SuiteId::S14, 300);
    o.suite(&runs, SuiteId::S15, 200);
    o.note(total < 300.0, format!("all 15 suites in {total:.1} s"));
    results.push(("S14/S15 transfer and Hilbert witness", o));

    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        println!(
            "[{}] criterion {}: {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
