//! Named test problems with manufactured or closed-form exact solutions.

use std::f64::consts::PI;

use crate::birkhoff::{BcVariant, OddPattern};
use crate::colloc::reference::oscillatory_solution;
use crate::colloc::{Coef, ProblemSpec};
use crate::error::{Error, Result};

/// `Δu - γu = f` on the square with homogeneous Dirichlet data.
#[derive(Clone)]
pub struct Poisson2dSpec {
    pub gamma: f64,
    pub forcing: fn(f64, f64) -> f64,
    pub exact: fn(f64, f64) -> f64,
}

#[derive(Clone)]
pub enum Problem {
    OneD(ProblemSpec),
    TwoD(Poisson2dSpec),
}

#[derive(Clone)]
pub struct RegistryEntry {
    pub id: &'static str,
    /// Short statement of the equation and data.
    pub description: &'static str,
    /// Smallest N at which the entry is documented to solve.
    pub min_n: usize,
    pub problem: Problem,
}

pub const IDS: &[&str] = &[
    "gauss-bvp",
    "piecewise-c3",
    "quadratic",
    "mixed-s",
    "mixed-rs",
    "neumann-cos10",
    "ivp-const",
    "ivp-cubic",
    "ivp-oscillatory",
    "third-t",
    "third-st",
    "third-rt",
    "third-rst",
    "fifth-sin3",
    "poisson2d-sin4pi",
    "poisson2d-zero",
];

/// Boundary operators `u(-1) - u'(-1)` and `u(1) + u'(1)`.
pub const MIXED_PM: BcVariant = BcVariant::Mixed {
    a_minus: 1.0,
    b_minus: -1.0,
    a_plus: 1.0,
    b_plus: 1.0,
};

fn spec(id: &str, lead: f64, coeffs: Vec<Coef>, forcing: Coef, bc: BcVariant, bc_data: Vec<f64>, exact: Coef) -> ProblemSpec {
    ProblemSpec {
        id: id.to_string(),
        lead,
        coeffs,
        forcing,
        bc,
        bc_data,
        exact: Some(exact),
    }
}

fn piecewise_forcing(x: f64) -> f64 {
    if x < 0.0 {
        x * x / 2.0 + x - 1.0
    } else {
        x - 1.0
    }
}

fn piecewise_exact(x: f64) -> f64 {
    if x < 0.0 {
        (x + 1.0).cosh() - x * x / 2.0 - x
    } else {
        (x + 1.0).cosh() - x.cosh() - x + 1.0
    }
}

fn sin3(x: f64) -> f64 {
    (PI * x).sin().powi(3)
}

/// `-u''' + r u'' + s u' + t u = f` with exact solution `e^x`.
fn third(id: &str, r: f64, s: f64, t: f64) -> ProblemSpec {
    let e = std::f64::consts::E;
    spec(
        id,
        -1.0,
        vec![t.into(), s.into(), r.into()],
        Coef::new(move |x: f64| (-1.0 + r + s + t) * x.exp()),
        BcVariant::OddOrder(OddPattern::Third),
        vec![1.0 / e, e, e],
        Coef::new(f64::exp),
    )
}

fn sin4pi(x: f64, y: f64) -> f64 {
    (4.0 * PI * x).sin() * (4.0 * PI * y).sin()
}

pub fn lookup(id: &str) -> Result<RegistryEntry> {
    let e = std::f64::consts::E;
    let (description, min_n, problem) = match id {
        "gauss-bvp" => (
            "u'' - x u' - u = 0, u(±1) = 1; u = exp((x²-1)/2)",
            4,
            Problem::OneD(spec(
                id,
                1.0,
                vec![(-1.0).into(), Coef::new(|x| -x)],
                0.0.into(),
                BcVariant::Dirichlet,
                vec![1.0, 1.0],
                Coef::new(|x: f64| ((x * x - 1.0) / 2.0).exp()),
            )),
        ),
        "piecewise-c3" => (
            "u'' - u = f with piecewise f in C¹; u in C³",
            4,
            Problem::OneD(spec(
                id,
                1.0,
                vec![(-1.0).into(), 0.0.into()],
                Coef::new(piecewise_forcing),
                BcVariant::Dirichlet,
                vec![piecewise_exact(-1.0), piecewise_exact(1.0)],
                Coef::new(piecewise_exact),
            )),
        ),
        "quadratic" => (
            "u'' = 2, u(±1) = 1; u = x²",
            2,
            Problem::OneD(spec(
                id,
                1.0,
                vec![0.0.into(), 0.0.into()],
                2.0.into(),
                BcVariant::Dirichlet,
                vec![1.0, 1.0],
                Coef::new(|x| x * x),
            )),
        ),
        "mixed-s" => (
            "u'' - u = 0, u(-1) - u'(-1) = 0, u(1) + u'(1) = 2e; u = e^x",
            4,
            Problem::OneD(spec(
                id,
                1.0,
                vec![(-1.0).into(), 0.0.into()],
                0.0.into(),
                MIXED_PM,
                vec![0.0, 2.0 * e],
                Coef::new(f64::exp),
            )),
        ),
        "mixed-rs" => (
            "u'' - u' - u = -e^x, u(-1) - u'(-1) = 0, u(1) + u'(1) = 2e; u = e^x",
            4,
            Problem::OneD(spec(
                id,
                1.0,
                vec![(-1.0).into(), (-1.0).into()],
                Coef::new(|x: f64| -x.exp()),
                MIXED_PM,
                vec![0.0, 2.0 * e],
                Coef::new(f64::exp),
            )),
        ),
        "neumann-cos10" => (
            "u'' = -100 cos(10x), u'(±1) = ∓10 sin 10, u(-1) = 0; u = cos(10x) - cos(10)",
            3,
            Problem::OneD(spec(
                id,
                1.0,
                vec![0.0.into(), 0.0.into()],
                Coef::new(|x: f64| -100.0 * (10.0 * x).cos()),
                BcVariant::NeumannAnchored,
                vec![10.0 * 10f64.sin(), -10.0 * 10f64.sin(), 0.0],
                Coef::new(|x: f64| (10.0 * x).cos() - 10f64.cos()),
            )),
        ),
        "ivp-const" => (
            "u' + u = 0, u(-1) = 1; u = exp(-(x+1))",
            1,
            Problem::OneD(spec(
                id,
                1.0,
                vec![1.0.into()],
                0.0.into(),
                BcVariant::RadauInitial,
                vec![1.0],
                Coef::new(|x: f64| (-(x + 1.0)).exp()),
            )),
        ),
        "ivp-cubic" => (
            "u' + x³u = 0, u(-1) = 1; u = exp((1-x⁴)/4)",
            1,
            Problem::OneD(spec(
                id,
                1.0,
                vec![Coef::new(|x: f64| x.powi(3))],
                0.0.into(),
                BcVariant::RadauInitial,
                vec![1.0],
                Coef::new(|x: f64| ((1.0 - x.powi(4)) / 4.0).exp()),
            )),
        ),
        "ivp-oscillatory" => (
            "u' + x³u = 20 sin(500x²), u(-1) = 0; u by quadrature",
            1,
            Problem::OneD(spec(
                id,
                1.0,
                vec![Coef::new(|x: f64| x.powi(3))],
                Coef::new(|x: f64| 20.0 * (500.0 * x * x).sin()),
                BcVariant::RadauInitial,
                vec![0.0],
                Coef::new(oscillatory_solution),
            )),
        ),
        "third-t" => ("-u''' + u = f; u = e^x", 3, Problem::OneD(third(id, 0.0, 0.0, 1.0))),
        "third-st" => ("-u''' + u' + u = f; u = e^x", 3, Problem::OneD(third(id, 0.0, 1.0, 1.0))),
        "third-rt" => ("-u''' + u'' + u = f; u = e^x", 3, Problem::OneD(third(id, 1.0, 0.0, 1.0))),
        "third-rst" => ("-u''' + u'' + u' + u = f; u = e^x", 3, Problem::OneD(third(id, 1.0, 1.0, 1.0))),
        "fifth-sin3" => (
            "u⁽⁵⁾ + sin(10x) u' + x u = f, u(±1) = u'(±1) = u''(1) = 0; u = sin³(πx)",
            5,
            Problem::OneD(spec(
                id,
                1.0,
                vec![Coef::new(|x| x), Coef::new(|x: f64| (10.0 * x).sin()), 0.0.into(), 0.0.into(), 0.0.into()],
                Coef::new(|x: f64| {
                    // sin³(πx) = (3 sin πx - sin 3πx)/4
                    let p5 = PI.powi(5);
                    let d5 = (3.0 * p5 * (PI * x).cos() - 243.0 * p5 * (3.0 * PI * x).cos()) / 4.0;
                    let d1 = 3.0 * PI * ((PI * x).cos() - (3.0 * PI * x).cos()) / 4.0;
                    d5 + (10.0 * x).sin() * d1 + x * sin3(x)
                }),
                BcVariant::OddOrder(OddPattern::Fifth),
                vec![0.0; 5],
                Coef::new(sin3),
            )),
        ),
        "poisson2d-sin4pi" => (
            "Δu = f on the square, u = 0 on the boundary; u = sin(4πx) sin(4πy)",
            8,
            Problem::TwoD(Poisson2dSpec {
                gamma: 0.0,
                forcing: |x, y| -32.0 * PI * PI * sin4pi(x, y),
                exact: sin4pi,
            }),
        ),
        "poisson2d-zero" => (
            "Δu = 0 on the square, u = 0 on the boundary; u = 0",
            2,
            Problem::TwoD(Poisson2dSpec {
                gamma: 0.0,
                forcing: |_, _| 0.0,
                exact: |_, _| 0.0,
            }),
        ),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown problem '{id}'; available: {}",
                IDS.join(", ")
            )))
        }
    };
    let id = IDS.iter().find(|&&k| k == id).copied().expect("listed");
    Ok(RegistryEntry {
        id,
        description,
        min_n,
        problem,
    })
}

/// Every entry, in listing order.
pub fn all() -> Vec<RegistryEntry> {
    IDS.iter().map(|id| lookup(id).expect("listed ids resolve")).collect()
}

/// The 1D problem behind an id.
pub fn problem(id: &str) -> Result<ProblemSpec> {
    match lookup(id)?.problem {
        Problem::OneD(p) => Ok(p),
        Problem::TwoD(_) => Err(Error::Unsupported(format!("'{id}' is a 2D problem"))),
    }
}
