//! Canonical runs behind each published table and figure.
//!
//! Every exhibit returns a [`ReportSet`] of CSV tables. Multi-series
//! exhibits price their scenarios on the rayon pool and emit rows in
//! series order, so the output does not depend on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::{self, CatalogError, StudyVariant};
use crate::costmodel::{self, ElasticityParam, MarketName, ModelError, Scenario, YearlyCostRecord};
use crate::finance::DiscountSchedule;
use crate::reliability::{self, CapitalCostInputs, ReliabilityParams};
use crate::report::{self, fmt_num, ReportSet, Table};
use crate::scaling::BetaSchedule;
use crate::transport::{Node, ResolvedNetwork};

pub const EXHIBITS: [&str; 19] = [
    "table1", "table2", "table3", "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8",
    "fig9", "fig10", "fig11", "fig12", "fig13", "fig14", "fig15", "fig16",
];

/// G/x regimes of the elasticity grid.
pub const REGIMES: [f64; 3] = [0.02, 1.0, 50.0];

/// Transport rates to the surface ($/kg) drawn in the cost-vs-R figure.
pub const FIG1_RATES: [f64; 4] = [1e2, 1e3, 1e4, 1e5];

/// Baseline reliabilities of the innovation sweep.
pub const R0_SWEEP: [f64; 6] = [0.10, 0.25, 0.40, 0.55, 0.70, 0.85];

#[derive(Debug, Error)]
pub enum ExhibitError {
    #[error("unknown exhibit `{0}`")]
    Unknown(String),
    #[error("scenario {scenario}: {source}")]
    Model {
        scenario: String,
        #[source]
        source: ModelError,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn model(scenario: &str) -> impl FnOnce(ModelError) -> ExhibitError + '_ {
    move |source| ExhibitError::Model {
        scenario: scenario.to_string(),
        source,
    }
}

/// A labelled run.
pub type Series = (String, Scenario);

/// Price every series in parallel, keeping the input order.
pub fn run_all(
    series: &[Series],
    net: &ResolvedNetwork,
) -> Result<Vec<(String, Vec<YearlyCostRecord>)>, ExhibitError> {
    series
        .par_iter()
        .map(|(label, s)| {
            costmodel::run_scenario(s, net)
                .map(|r| (label.clone(), r))
                .map_err(model(label))
        })
        .collect()
}

/// Yearly and advantage tables for a set of series.
pub fn series_report(
    id: &str,
    series: &[Series],
    net: &ResolvedNetwork,
) -> Result<ReportSet, ExhibitError> {
    let runs = run_all(series, net)?;
    let adv: Vec<_> = runs
        .iter()
        .map(|(l, r)| (l.clone(), costmodel::advantage_years(r)))
        .collect();
    Ok(ReportSet {
        tables: vec![
            report::yearly_table(&format!("{id}_yearly"), &runs),
            report::advantage_table(&format!("{id}_advantage"), &adv),
        ],
    })
}

fn study(id: &str, market: MarketName) -> Result<Scenario, ExhibitError> {
    Ok(Scenario::new(catalog::load_study(id)?, market))
}

fn variant(v: &StudyVariant) -> Result<Scenario, ExhibitError> {
    Ok(catalog::apply_variant(v)?)
}

fn baseline() -> Result<Scenario, ExhibitError> {
    study("BASELINE", MarketName::Optimistic)
}

fn cd(n: u8) -> Result<Scenario, ExhibitError> {
    variant(&catalog::cd_curve(n)?)
}

/// Capital trade inputs for the baseline technology.
pub fn baseline_capital_inputs(t_k: f64) -> Result<CapitalCostInputs, ExhibitError> {
    let t = catalog::load_study("BASELINE")?;
    Ok(CapitalCostInputs {
        zeta_d: t.zeta_d_usd(),
        zeta_f: t.zeta_f_usd(),
        m_k: t.capital_mass_kg(),
        t_k,
    })
}

/// Elasticities of year-1 ψ₀ for every parameter at one G/x regime.
pub fn elasticity_row(
    s: &Scenario,
    net: &ResolvedNetwork,
    ratio: f64,
) -> Result<Vec<(ElasticityParam, f64)>, ModelError> {
    let r = costmodel::regime_scenario(s, net, ratio)?;
    ElasticityParam::ALL
        .par_iter()
        .map(|&p| costmodel::elasticity(p, &r, net).map(|e| (p, e)))
        .collect()
}

/// The six studies compared on a common footing, CD in its modified form.
fn six_studies(rate: f64) -> Result<Vec<Series>, ExhibitError> {
    let mut out = Vec::new();
    for id in ["K", "S", "CD5", "J", "B", "M"] {
        let mut s = if id == "CD5" {
            cd(5)?
        } else {
            study(id, MarketName::Optimistic)?
        };
        s.econ.discount = DiscountSchedule::constant(rate);
        out.push((id.to_string(), s));
    }
    Ok(out)
}

fn reliability_curves() -> Result<ReportSet, ExhibitError> {
    let p = ReliabilityParams::default();
    let mut curves = Table::new("fig1", ["t_k", "r", "total_cost"]);
    let mut optima = Table::new("fig1_optima", ["t_k", "r_opt", "total_cost", "c_r"]);
    for t_k in FIG1_RATES {
        let c = baseline_capital_inputs(t_k)?;
        for r in (0..80).map(|i| 0.60 + 0.005 * f64::from(i)) {
            let v =
                reliability::capital_total_cost(r, &p, &c).map_err(|e| model("fig1")(e.into()))?;
            curves.push(vec![fmt_num(t_k), fmt_num(r), fmt_num(v)]);
        }
        let o = reliability::optimize_reliability(&p, &c).map_err(|e| model("fig1")(e.into()))?;
        optima.push(vec![
            fmt_num(t_k),
            fmt_num(o.r_opt),
            fmt_num(o.total_cost),
            fmt_num(o.c_r_at_opt),
        ]);
    }
    Ok(ReportSet {
        tables: vec![curves, optima],
    })
}

/// R_opt and c_R(R_opt) over T_K from 10 to 10⁶ $/kg in quarter decades.
fn reliability_optima(id: &str, column: &str) -> Result<ReportSet, ExhibitError> {
    let p = ReliabilityParams::default();
    let mut t = Table::new(id, ["t_k", column]);
    for k in 0..=20 {
        let t_k = 10f64.powf(1.0 + 0.25 * f64::from(k));
        let o = reliability::optimize_reliability(&p, &baseline_capital_inputs(t_k)?)
            .map_err(|e| model(id)(e.into()))?;
        let v = if column == "r_opt" {
            o.r_opt
        } else {
            o.c_r_at_opt
        };
        t.push(vec![fmt_num(t_k), fmt_num(v)]);
    }
    Ok(ReportSet { tables: vec![t] })
}

fn gamma_curves(net: &ResolvedNetwork) -> Result<ReportSet, ExhibitError> {
    let mut t = Table::new(
        "fig4",
        ["node", "dv_from_leo", "gamma_sep", "gamma_chemical"],
    );
    let err = |e: crate::transport::TransportError| model("fig4")(e.into());
    let mut rows = Vec::new();
    for n in net.sale_nodes() {
        let dv = net.delta_v.get(Node::Leo, n).map_err(err)?;
        let terr = net.terrestrial_gear(n).map_err(err)?;
        let sep = net.lunar_gear(n, true).map_err(err)? / terr;
        let chem = net.lunar_gear(n, false).map_err(err)? / terr;
        rows.push((dv, n, sep, chem));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (dv, n, sep, chem) in rows {
        t.push(vec![
            n.to_string(),
            fmt_num(dv),
            fmt_num(sep),
            fmt_num(chem),
        ]);
    }
    Ok(ReportSet { tables: vec![t] })
}

fn cost_shares(net: &ResolvedNetwork) -> Result<ReportSet, ExhibitError> {
    let s = baseline()?;
    let mut t = Table::new("fig7", ["year", "labor", "capital", "finance"]);
    for year in [1, 30] {
        let r = costmodel::dimensionless_state(&s, net, year).map_err(model("BASELINE"))?;
        let (labor, capital, finance) = r.state.cost_shares();
        t.push(vec![
            year.to_string(),
            fmt_num(labor),
            fmt_num(capital),
            fmt_num(finance),
        ]);
    }
    Ok(ReportSet { tables: vec![t] })
}

fn econ_variants() -> Result<Vec<Series>, ExhibitError> {
    let base = baseline()?;
    let with = |f: &dyn Fn(&mut Scenario)| {
        let mut s = base.clone();
        f(&mut s);
        s
    };
    Ok(vec![
        ("baseline".into(), base.clone()),
        (
            "x_max=10t/day".into(),
            with(&|s| s.econ.x_max = Some(3650.0)),
        ),
        (
            "x_max=20t/day".into(),
            with(&|s| s.econ.x_max = Some(7300.0)),
        ),
        ("beta=0".into(), with(&|s| s.econ.beta = BetaSchedule::OFF)),
        (
            "beta=1".into(),
            with(&|s| {
                s.econ.beta = BetaSchedule {
                    max: 1.0,
                    ..BetaSchedule::default()
                }
            }),
        ),
        ("a=0.8".into(), with(&|s| s.econ.a = 0.8)),
        ("b=0.70".into(), with(&|s| s.econ.b = 0.70)),
        ("b=0.80".into(), with(&|s| s.econ.b = 0.80)),
    ])
}

fn tech_variants() -> Result<Vec<Series>, ExhibitError> {
    let base = baseline()?;
    let mut out = vec![("baseline".to_string(), base.clone())];
    for k in [2.0, 0.5] {
        let mut s = base.clone();
        s.tech.annual_product *= k;
        out.push((format!("M_p x{k}"), s));
        let mut s = base.clone();
        s.tech.m_k_surface *= k;
        s.tech.m_k_space *= k;
        out.push((format!("M_K x{k}"), s));
        let mut s = base.clone();
        s.tech.zeta_d *= k;
        s.tech.zeta_f *= k;
        out.push((format!("zeta x{k}"), s));
    }
    Ok(out)
}

fn elasticity_grid(net: &ResolvedNetwork) -> Result<ReportSet, ExhibitError> {
    let s = baseline()?;
    let rows = REGIMES
        .par_iter()
        .map(|&r| elasticity_row(&s, net, r).map(|e| (r, e)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(model("BASELINE"))?;
    Ok(ReportSet {
        tables: vec![report::elasticity_table("table3", &rows)],
    })
}

/// Run the canonical configuration for one exhibit.
pub fn reproduce(id: &str, net: &ResolvedNetwork) -> Result<ReportSet, ExhibitError> {
    let markets = |sep: bool| -> Result<Vec<Series>, ExhibitError> {
        MarketName::ALL
            .into_iter()
            .map(|m| {
                let mut s = study("BASELINE", m)?;
                s.sep = sep;
                Ok((m.as_str().to_string(), s))
            })
            .collect()
    };
    match id {
        "table1" => series_report("table1", &markets(true)?, net),
        "table2" => Ok(ReportSet {
            tables: vec![report::phi_table("table2", &catalog::phi_table()?)],
        }),
        "table3" => elasticity_grid(net),
        "fig1" => reliability_curves(),
        "fig2" => reliability_optima("fig2", "r_opt"),
        "fig3" => reliability_optima("fig3", "c_r"),
        "fig4" => gamma_curves(net),
        "fig5" | "fig6" => {
            let mut s = baseline()?;
            s.sep = id == "fig6";
            series_report(id, &[("BASELINE".into(), s)], net)
        }
        "fig7" => cost_shares(net),
        "fig8" => {
            let series: Vec<_> = markets(true)?.into_iter().skip(1).collect();
            series_report("fig8", &series, net)
        }
        "fig9" => series_report("fig9", &econ_variants()?, net),
        "fig10" => series_report("fig10", &tech_variants()?, net),
        "fig11" => {
            let series = (1..=5)
                .map(|n| Ok((format!("CD{n}"), cd(n)?)))
                .collect::<Result<Vec<_>, ExhibitError>>()?;
            series_report("fig11", &series, net)
        }
        "fig12" => {
            let series = vec![
                ("J".to_string(), study("J", MarketName::Optimistic)?),
                ("J-SLS".to_string(), variant(&catalog::j_sls())?),
                ("B".to_string(), study("B", MarketName::Optimistic)?),
                ("B-demand".to_string(), variant(&catalog::b_demand())?),
            ];
            series_report("fig12", &series, net)
        }
        "fig13" => series_report("fig13", &six_studies(catalog::CD_RATE)?, net),
        "fig14" => {
            let mut series = Vec::new();
            for m in [MarketName::Optimistic, MarketName::Pessimistic] {
                let mut c = cd(5)?;
                c.market = m;
                let mut s = study("S", m)?;
                s.econ.discount = DiscountSchedule::ppp();
                series.push((format!("CD5 {}", m.as_str()), c));
                series.push((format!("S {}", m.as_str()), s));
            }
            series_report("fig14", &series, net)
        }
        "fig15" => series_report("fig15", &six_studies(0.12)?, net),
        "fig16" => {
            let mut series = Vec::new();
            for (label, base) in [("CD5", cd(5)?), ("S", study("S", MarketName::Optimistic)?)] {
                for r0 in R0_SWEEP {
                    let mut s = base.clone();
                    s.econ.discount = DiscountSchedule::ppp();
                    s.econ.reliability.r0 = r0;
                    series.push((format!("{label} R0={r0}"), s));
                }
            }
            series_report("fig16", &series, net)
        }
        other => Err(ExhibitError::Unknown(other.to_string())),
    }
}

/// Advantage years keyed by series label, read back from a report.
pub fn advantage_from(
    report: &ReportSet,
    table: &str,
) -> BTreeMap<String, BTreeMap<Node, Option<u32>>> {
    let mut out: BTreeMap<String, BTreeMap<Node, Option<u32>>> = BTreeMap::new();
    let Some(t) = report.get(table) else {
        return out;
    };
    for row in &t.rows {
        let Ok(node) = row[0].parse::<Node>() else {
            continue;
        };
        for (label, cell) in t.header.iter().zip(row).skip(1) {
            out.entry(label.clone())
                .or_default()
                .insert(node, cell.parse().ok());
        }
    }
    out
}
