use psim::birkhoff::psim_dirichlet;
use psim::colloc::{self, condition_sweep, poisson, Coef, Cond};
use psim::registry::{self, Problem};
use psim::{BcVariant, NodeFamily, ProblemSpec, Scheme};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn quadratic(bc: BcVariant, bc_data: Vec<f64>) -> ProblemSpec {
    ProblemSpec {
        id: "quadratic".into(),
        lead: 1.0,
        coeffs: vec![0.0.into(), 0.0.into()],
        forcing: 2.0.into(),
        bc,
        bc_data,
        exact: Some(Coef::new(|x| x * x)),
    }
}

#[test]
fn gauss_bvp_legendre_64() {
    let p = registry::problem("gauss-bvp").unwrap();
    let nodes = NodeFamily::Lgl.build(64).unwrap();
    let b = colloc::solve(&p, &nodes, Scheme::Bcol).unwrap();
    assert!(b.max_error.unwrap() <= 1e-14);
    assert!(rel(b.cond2, 1.90) <= 0.02, "{}", b.cond2);
    let l = colloc::solve(&p, &nodes, Scheme::Lcol).unwrap();
    assert!(l.cond2 / 1.51e5 > 0.5 && l.cond2 / 1.51e5 < 2.0, "{}", l.cond2);
    assert!(l.max_error.unwrap() < 1e-11);
    let pl = colloc::solve(&p, &nodes, Scheme::Plcol).unwrap();
    assert!(rel(pl.cond2, 1.32) <= 0.02, "{}", pl.cond2);
}

#[test]
fn schemes_agree_at_n32() {
    let p = registry::problem("gauss-bvp").unwrap();
    for fam in [NodeFamily::Lgl, NodeFamily::Cgl] {
        let nodes = fam.build(32).unwrap();
        let sols: Vec<Vec<f64>> = [Scheme::Bcol, Scheme::Lcol, Scheme::Plcol]
            .iter()
            .map(|&s| colloc::solve(&p, &nodes, s).unwrap().solution)
            .collect();
        for other in &sols[1..] {
            let d = sols[0].iter().zip(other).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(d <= 1e-10, "{d:e}");
        }
    }
}

#[test]
fn lcol_growth_between_128_and_512() {
    let p = registry::problem("gauss-bvp").unwrap();
    let c = condition_sweep(Scheme::Lcol, &p, NodeFamily::Lgl, &[128, 512]).unwrap();
    let exponent = (c[1].1 / c[0].1).ln() / 4f64.ln();
    assert!((exponent - 4.0).abs() <= 0.3, "{exponent}");
}

#[test]
fn quadratic_reproduced_by_every_scheme() {
    let p = quadratic(BcVariant::Dirichlet, vec![1.0, 1.0]);
    for fam in [NodeFamily::Lgl, NodeFamily::Cgl] {
        let nodes = fam.build(12).unwrap();
        for s in [Scheme::Bcol, Scheme::Lcol, Scheme::Plcol] {
            let r = colloc::solve(&p, &nodes, s).unwrap();
            assert!(r.max_error.unwrap() <= 1e-12, "{s} {fam:?}");
        }
        // with no lower-order terms the P-LCOL matrix is the identity
        let r = colloc::solve(&p, &nodes, Scheme::Plcol).unwrap();
        assert!((r.cond2 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn boundary_data_exact_for_bcol() {
    for id in ["gauss-bvp", "mixed-s", "mixed-rs", "ivp-cubic", "neumann-cos10"] {
        let p = registry::problem(id).unwrap();
        let fam = match p.bc {
            BcVariant::RadauInitial => NodeFamily::Cgr,
            _ => NodeFamily::Lgl,
        };
        let nodes = fam.build(33).unwrap();
        let psim = psim::PsimMatrix::build(&nodes, p.bc).unwrap();
        let r = colloc::solve_bcol_with(&p, &psim, Cond::Skip).unwrap();
        let u = r.interpolant.unwrap();
        let du = u.derivative();
        for ((_, f), want) in psim.boundary_columns().iter().zip(&p.bc_data) {
            let got = f.apply_fn(|k, x| if k == 0 { u.eval(x) } else { du.eval(x) });
            assert!((got - want).abs() <= 1e-12, "{id}: {got} vs {want}");
        }
    }
}

#[test]
fn ivp_integrates_constant() {
    let p = ProblemSpec {
        id: "one".into(),
        lead: 1.0,
        coeffs: vec![0.0.into()],
        forcing: 1.0.into(),
        bc: BcVariant::RadauInitial,
        bc_data: vec![0.0],
        exact: Some(Coef::new(|x| 1.0 + x)),
    };
    for fam in [NodeFamily::Lgr, NodeFamily::Cgr] {
        let r = colloc::solve(&p, &fam.build(9).unwrap(), Scheme::Bcol).unwrap();
        assert!(r.max_error.unwrap() < 1e-14);
    }
}

#[test]
fn table_cells() {
    let cell = |id: &str, fam: NodeFamily, n: usize, s: Scheme| {
        colloc::solve(&registry::problem(id).unwrap(), &fam.build(n).unwrap(), s).unwrap().cond2
    };
    assert!(rel(cell("ivp-const", NodeFamily::Cgr, 32, Scheme::Bcol), 2.35) <= 0.02);
    let l = cell("ivp-const", NodeFamily::Cgr, 32, Scheme::Lcol);
    assert!(l / 3.61e2 > 0.5 && l / 3.61e2 < 2.0, "{l}");
    assert!(rel(cell("mixed-s", NodeFamily::Cgl, 32, Scheme::Bcol), 2.42) <= 0.02);
    assert!(rel(cell("ivp-cubic", NodeFamily::Lgr, 256, Scheme::Bcol), 2.15) <= 0.02);
    assert!(rel(cell("third-t", NodeFamily::Cgl, 128, Scheme::Bcol), 1.16) <= 0.02);
}

#[test]
fn neumann_condition_one_and_error_floor() {
    let p = registry::problem("neumann-cos10").unwrap();
    for n in [31, 63] {
        let r = colloc::solve(&p, &NodeFamily::Lgl.build(n).unwrap(), Scheme::Bcol).unwrap();
        assert!((r.cond2 - 1.0).abs() < 1e-9);
        if n == 63 {
            assert!(r.max_error.unwrap() < 1e-12, "{:e}", r.max_error.unwrap());
        }
    }
    assert!(colloc::solve(&p, &NodeFamily::Lgl.build(32).unwrap(), Scheme::Bcol).is_err());
    assert!(colloc::solve(&p, &NodeFamily::Lgl.build(31).unwrap(), Scheme::Lcol).is_err());
}

#[test]
fn fifth_order_error_floor() {
    let p = registry::problem("fifth-sin3").unwrap();
    for n in [64, 128, 256] {
        let r = colloc::solve(&p, &NodeFamily::Cgl.build(n).unwrap(), Scheme::Bcol).unwrap();
        assert!(r.max_error.unwrap() < 1e-10, "N={n}: {:e}", r.max_error.unwrap());
    }
}

#[test]
fn every_registry_entry_solves_at_min_n() {
    for entry in registry::all() {
        match entry.problem {
            Problem::OneD(p) => {
                let fam = match p.bc {
                    BcVariant::RadauInitial => NodeFamily::Lgr,
                    _ => NodeFamily::Lgl,
                };
                let r = colloc::solve(&p, &fam.build(entry.min_n).unwrap(), Scheme::Bcol);
                assert!(r.is_ok(), "{}: {:?}", entry.id, r.err());
            }
            Problem::TwoD(s) => {
                let nodes = NodeFamily::Lgl.build(entry.min_n).unwrap();
                assert!(poisson::solve_poisson2d(s.gamma, s.forcing, &nodes).is_ok(), "{}", entry.id);
            }
        }
    }
}

#[test]
fn unknown_id_lists_available() {
    let msg = registry::lookup("nope").err().unwrap().to_string();
    assert!(msg.contains("gauss-bvp") && msg.contains("poisson2d-zero"), "{msg}");
}

#[test]
fn poisson_zero_forcing_and_kronecker() {
    let nodes = NodeFamily::Cgl.build(10).unwrap();
    let z = poisson::solve_poisson2d(0.0, |_, _| 0.0, &nodes).unwrap();
    assert_eq!(z.values.amax(), 0.0);
    let f = |x: f64, y: f64| (x + 2.0 * y).exp();
    let nodes = NodeFamily::Lgl.build(8).unwrap();
    let a = poisson::solve_poisson2d(1.0, f, &nodes).unwrap();
    let b = poisson::poisson2d_kronecker(1.0, f, &nodes).unwrap();
    assert!((a.values - b.values).amax() <= 1e-10);
    let psim = psim_dirichlet(&nodes).unwrap();
    assert!(poisson::solve_with(1.0, f, &psim).is_ok());
}
