//! Stability hypotheses for the coexistence state, reported with slack.

use std::fmt;

use serde::Serialize;

use crate::model::ModelParams;

/// A single strict inequality `value < bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
}

impl Bound {
    fn new(name: &'static str, value: f64, bound: f64) -> Self {
        Self { name, value, bound }
    }

    /// `bound - value`; positive means the inequality holds.
    pub fn slack(&self) -> f64 {
        self.bound - self.value
    }

    pub fn pass(&self) -> bool {
        self.value < self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    /// `a1 < 1`, `a2 < 1`.
    pub weak_competition: [Bound; 2],
    /// `q1 < d3/(2 alpha)`, `q1 < a1 d3/beta`, `q2 < d3/(2 beta)`, `q2 < a2 d3/alpha`.
    pub q_bounds: [Bound; 4],
    /// `a1 a2 d3^2 < (d3 - 2 alpha q1)(d3 - 2 beta q2)`.
    pub product_bound: Bound,
    /// `a1 a2 d3^2 / ((d3 - 2 alpha q1)(d3 - 2 beta q2))`, when both factors are positive.
    pub kappa: Option<f64>,
    /// The older sufficient condition `2(chi1+chi2) + a1 mu2 < mu1`, `2(chi1+chi2) + a2 mu1 < mu2`.
    pub condition_2012: [Bound; 2],
}

impl ConditionReport {
    pub fn weak_competition_pass(&self) -> bool {
        self.weak_competition.iter().all(Bound::pass)
    }

    /// All four relative-chemotaxis bounds and the product bound.
    pub fn new_conditions_pass(&self) -> bool {
        self.q_bounds.iter().all(Bound::pass) && self.product_bound.pass()
    }

    pub fn theorem_pass(&self) -> bool {
        self.weak_competition_pass() && self.new_conditions_pass()
    }

    pub fn condition_2012_pass(&self) -> bool {
        self.condition_2012.iter().all(Bound::pass)
    }

    pub fn bounds(&self) -> impl Iterator<Item = &Bound> {
        self.weak_competition
            .iter()
            .chain(self.q_bounds.iter())
            .chain(std::iter::once(&self.product_bound))
            .chain(self.condition_2012.iter())
    }

    pub fn csv_header() -> String {
        let mut cols = Vec::new();
        for name in BOUND_NAMES {
            cols.push(format!("{name}_value"));
            cols.push(format!("{name}_bound"));
            cols.push(format!("{name}_pass"));
        }
        cols.push("kappa".into());
        cols.push("theorem_pass".into());
        cols.push("condition_2012_pass".into());
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = Vec::new();
        for b in self.bounds() {
            cols.push(format!("{:.16e}", b.value));
            cols.push(format!("{:.16e}", b.bound));
            cols.push(b.pass().to_string());
        }
        cols.push(match self.kappa {
            Some(k) => format!("{k:.16e}"),
            None => "undefined".into(),
        });
        cols.push(self.theorem_pass().to_string());
        cols.push(self.condition_2012_pass().to_string());
        cols.join(",")
    }
}

const BOUND_NAMES: [&str; 9] = [
    "a1",
    "a2",
    "q1_diffusive",
    "q1_competitive",
    "q2_diffusive",
    "q2_competitive",
    "product",
    "old_first",
    "old_second",
];

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stability conditions")?;
        let section = |f: &mut fmt::Formatter<'_>, title: &str, bounds: &[Bound]| {
            writeln!(f, "  {title}")?;
            for b in bounds {
                writeln!(
                    f,
                    "    {:<16} {:>24.16e} < {:<24.16e} slack {:>+.6e}  {}",
                    b.name,
                    b.value,
                    b.bound,
                    b.slack(),
                    verdict(b.pass())
                )?;
            }
            Ok::<(), fmt::Error>(())
        };
        section(f, "weak competition", &self.weak_competition)?;
        section(f, "relative chemotactic strength", &self.q_bounds)?;
        section(
            f,
            "product bound",
            std::slice::from_ref(&self.product_bound),
        )?;
        match self.kappa {
            Some(k) => writeln!(f, "  contraction factor kappa = {k:.16e}")?,
            None => writeln!(f, "  contraction factor kappa = undefined")?,
        }
        section(f, "older sufficient condition", &self.condition_2012)?;
        writeln!(
            f,
            "  coexistence stability conditions: {}",
            verdict(self.theorem_pass())
        )?;
        write!(
            f,
            "  older sufficient condition:       {}",
            verdict(self.condition_2012_pass())
        )
    }
}

pub fn check_theorem1(p: &ModelParams) -> ConditionReport {
    let (q1, q2) = (p.q1(), p.q2());
    let d3 = p.d3;
    let f1 = d3 - 2.0 * p.alpha * q1;
    let f2 = d3 - 2.0 * p.beta * q2;
    let lhs = p.a1 * p.a2 * d3 * d3;
    let kappa = (f1 > 0.0 && f2 > 0.0).then(|| lhs / (f1 * f2));
    let [old_first, old_second] = check_condition_2012(p);
    ConditionReport {
        weak_competition: [Bound::new("a1", p.a1, 1.0), Bound::new("a2", p.a2, 1.0)],
        q_bounds: [
            Bound::new("q1_diffusive", q1, d3 / (2.0 * p.alpha)),
            Bound::new("q1_competitive", q1, p.a1 * d3 / p.beta),
            Bound::new("q2_diffusive", q2, d3 / (2.0 * p.beta)),
            Bound::new("q2_competitive", q2, p.a2 * d3 / p.alpha),
        ],
        // a nonpositive factor voids the bound rather than flipping its sign
        product_bound: Bound::new("product", lhs, f1.max(0.0) * f2.max(0.0)),
        kappa,
        condition_2012: [old_first, old_second],
    }
}

pub fn check_condition_2012(p: &ModelParams) -> [Bound; 2] {
    let taxis = 2.0 * (p.chi1 + p.chi2);
    [
        Bound::new("old_first", taxis + p.a1 * p.mu2, p.mu1),
        Bound::new("old_second", taxis + p.a2 * p.mu1, p.mu2),
    ]
}
