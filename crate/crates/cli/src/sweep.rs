//! Seeded Monte Carlo sweeps over parameter grids, with CSV emission.
//!
//! Cells iterate in the fixed order n, then k, then p, then the m-grid
//! entry; every per-trial seed is derived from the base seed through
//! [`pooltest::mix64`], so a sweep is byte-reproducible from its spec:
//!
//! ```text
//! cell_seed      = mix64(base_seed, cell_index)
//! trial_seed(t)  = mix64(mix64(cell_seed, 1), t)
//! matrix_seed(t) = mix64(mix64(cell_seed, 2), t)   (shared matrix: t = 0)
//! ```

use crate::trial::run_trial;
use pooltest::{
    bernoulli_failure_bound, build_kautz_singleton, build_probabilistic, derive_ks_params,
    derive_prob_params, dilution_overflow_bound, gamma_constant, ks_guarantee_margin, mix64,
    prob_m_bound, AdversaryStrategy, ChannelSpec, ContactMatrix, Error, Result,
};
use std::io::Write;

/// Which design a sweep builds per cell.
#[derive(Debug, Clone, PartialEq)]
pub enum DesignKind {
    Bernoulli { alpha: f64, delta: f64 },
    Ks { delta: f64 },
}

impl DesignKind {
    fn label(&self) -> &'static str {
        match self {
            DesignKind::Bernoulli { .. } => "bernoulli",
            DesignKind::Ks { .. } => "ks",
        }
    }
}

/// Row-count grid: explicit values, or multipliers on the derived bound.
#[derive(Debug, Clone, PartialEq)]
pub enum MGrid {
    Derived { multipliers: Vec<f64> },
    Fixed(Vec<usize>),
}

impl MGrid {
    fn entries(&self) -> Vec<MEntry> {
        match self {
            MGrid::Derived { multipliers } => {
                multipliers.iter().map(|&c| MEntry::Derived(c)).collect()
            }
            MGrid::Fixed(ms) => ms.iter().map(|&m| MEntry::Fixed(m)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum MEntry {
    Derived(f64),
    Fixed(usize),
}

/// Channel policy; the stochastic channel takes its p from the grid cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepChannel {
    Stochastic,
    Adversarial { strategy: AdversaryStrategy },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub design: DesignKind,
    pub n_grid: Vec<usize>,
    pub k_grid: Vec<usize>,
    pub p_grid: Vec<f64>,
    pub m_grid: MGrid,
    pub trials: usize,
    pub base_seed: u64,
    pub channel: SweepChannel,
    /// Rebuild the (random) contact matrix for every trial instead of once
    /// per cell; dilution is always fresh per trial.
    pub fresh_matrix_per_trial: bool,
}

/// Per-cell aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub design: &'static str,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub trials: usize,
    pub result: CellResult,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellResult {
    Feasible {
        m: usize,
        e: usize,
        success_rate: f64,
        mean_fp: f64,
        mean_fn: f64,
        bound_prop2: f64,
        bound_pf: f64,
    },
    Infeasible {
        reason: String,
    },
}

impl SweepCell {
    pub fn success_rate(&self) -> Option<f64> {
        match &self.result {
            CellResult::Feasible { success_rate, .. } => Some(*success_rate),
            CellResult::Infeasible { .. } => None,
        }
    }
}

struct CellDesign {
    matrix_for_trial: Box<dyn Fn(u64) -> ContactMatrix>,
    m: usize,
    e: usize,
    q: f64,
    bound_pf: f64,
    delta: f64,
}

fn plan_cell(
    spec: &SweepSpec,
    n: usize,
    k: usize,
    p: f64,
    m_entry: MEntry,
) -> Result<CellDesign> {
    match &spec.design {
        DesignKind::Bernoulli { alpha, delta } => {
            let (alpha, delta) = (*alpha, *delta);
            let m = match m_entry {
                MEntry::Fixed(m) => m,
                MEntry::Derived(c) => {
                    let gamma = gamma_constant(alpha, delta, p)?;
                    (c * prob_m_bound(n, k, alpha, gamma)).ceil() as usize
                }
            };
            let params = derive_prob_params(n, k, p, alpha, delta, Some(m))?;
            let bound_pf = bernoulli_failure_bound(n, k, params.q, m, params.e).value;
            let (q, e) = (params.q, params.e);
            Ok(CellDesign {
                matrix_for_trial: Box::new(move |seed| build_probabilistic(&params, seed)),
                m,
                e,
                q,
                bound_pf,
                delta,
            })
        }
        DesignKind::Ks { delta } => {
            let delta = *delta;
            if let MEntry::Derived(c) = m_entry {
                if c != 1.0 {
                    return Err(Error::Infeasible(
                        "the explicit design derives m from n'; only multiplier 1 applies"
                            .to_string(),
                    ));
                }
            }
            if let MEntry::Fixed(_) = m_entry {
                return Err(Error::Infeasible(
                    "the explicit design derives m from n'; fixed m grids do not apply"
                        .to_string(),
                ));
            }
            let params = derive_ks_params(n, k, p, delta)?;
            let mc = build_kautz_singleton(&params)?;
            let bound_pf = if ks_guarantee_margin(&params, k) > 0 {
                0.0
            } else {
                1.0
            };
            let (m, e) = (params.m, params.e);
            let q = 1.0 / params.nprime as f64;
            Ok(CellDesign {
                matrix_for_trial: Box::new(move |_| mc.clone()),
                m,
                e,
                q,
                bound_pf,
                delta,
            })
        }
    }
}

/// Runs every cell of the grid. Infeasible cells are reported in place and
/// the sweep continues.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepCell>> {
    if spec.n_grid.is_empty()
        || spec.k_grid.is_empty()
        || spec.p_grid.is_empty()
        || spec.m_grid.entries().is_empty()
    {
        return Err(Error::Infeasible("sweep grids must be non-empty".into()));
    }
    if spec.trials == 0 {
        return Err(Error::Infeasible("trials must be at least 1".into()));
    }
    let mut cells = Vec::new();
    let mut cell_index: u64 = 0;
    for &n in &spec.n_grid {
        for &k in &spec.k_grid {
            for &p in &spec.p_grid {
                for m_entry in spec.m_grid.entries() {
                    let cell_seed = mix64(spec.base_seed, cell_index);
                    cell_index += 1;
                    let design = match plan_cell(spec, n, k, p, m_entry) {
                        Ok(design) => design,
                        Err(err) => {
                            cells.push(SweepCell {
                                design: spec.design.label(),
                                n,
                                k,
                                p,
                                trials: spec.trials,
                                result: CellResult::Infeasible {
                                    reason: err.to_string(),
                                },
                            });
                            continue;
                        }
                    };
                    let channel = match spec.channel {
                        SweepChannel::Stochastic => ChannelSpec::Stochastic { p },
                        SweepChannel::Adversarial { strategy } => ChannelSpec::Adversarial {
                            e: design.e,
                            strategy,
                        },
                    };
                    let trial_base = mix64(cell_seed, 1);
                    let matrix_base = mix64(cell_seed, 2);
                    let shared_matrix = if spec.fresh_matrix_per_trial {
                        None
                    } else {
                        Some((design.matrix_for_trial)(mix64(matrix_base, 0)))
                    };
                    let (mut successes, mut fp_sum, mut fn_sum) = (0usize, 0usize, 0usize);
                    for t in 0..spec.trials {
                        let record = match &shared_matrix {
                            Some(mc) => {
                                run_trial(mc, k, design.e, &channel, mix64(trial_base, t as u64))?
                            }
                            None => {
                                let mc =
                                    (design.matrix_for_trial)(mix64(matrix_base, t as u64));
                                run_trial(&mc, k, design.e, &channel, mix64(trial_base, t as u64))?
                            }
                        };
                        successes += record.exact as usize;
                        fp_sum += record.false_pos;
                        fn_sum += record.false_neg;
                    }
                    let bound_prop2 =
                        dilution_overflow_bound(design.q, design.m, n, p, design.delta).value;
                    cells.push(SweepCell {
                        design: spec.design.label(),
                        n,
                        k,
                        p,
                        trials: spec.trials,
                        result: CellResult::Feasible {
                            m: design.m,
                            e: design.e,
                            success_rate: successes as f64 / spec.trials as f64,
                            mean_fp: fp_sum as f64 / spec.trials as f64,
                            mean_fn: fn_sum as f64 / spec.trials as f64,
                            bound_prop2,
                            bound_pf: design.bound_pf,
                        },
                    });
                }
            }
        }
    }
    Ok(cells)
}

pub const CSV_HEADER: &str =
    "design,n,k,m,p,e,trials,success_rate,mean_fp,mean_fn,bound_prop2,bound_pf";

/// Writes the stable CSV schema; infeasible cells keep their grid position
/// with `infeasible` in the success_rate column and empty numeric fields.
pub fn write_csv(cells: &[SweepCell], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for cell in cells {
        match &cell.result {
            CellResult::Feasible {
                m,
                e,
                success_rate,
                mean_fp,
                mean_fn,
                bound_prop2,
                bound_pf,
            } => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                cell.design,
                cell.n,
                cell.k,
                m,
                cell.p,
                e,
                cell.trials,
                success_rate,
                mean_fp,
                mean_fn,
                bound_prop2,
                bound_pf
            )?,
            CellResult::Infeasible { .. } => writeln!(
                out,
                "{},{},{},,{},,{},infeasible,,,,",
                cell.design, cell.n, cell.k, cell.p, cell.trials
            )?,
        }
    }
    Ok(())
}

pub fn sweep_to_csv_string(spec: &SweepSpec) -> Result<String> {
    let cells = run_sweep(spec)?;
    let mut buf = Vec::new();
    write_csv(&cells, &mut buf).expect("writing to memory cannot fail");
    Ok(String::from_utf8(buf).expect("csv output is ascii"))
}
