//! Command dispatch and report rendering for the `dualcore` binary.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{
    equivalence_audit, solve_dual_core, tdi_witness, verify_core_membership, AuditReport, CoreReport,
    CoreSolution, GameInstance, Imputation, TdiReport, DEFAULT_COALITION_BOUND,
};
use crate::graphs::{find_odd_hole_or_antihole, is_perfect, OddCycle, PerfectionReport, DEFAULT_GRAPH_BOUND};
use crate::io::{parse_graph, parse_imputation, parse_instance, parse_matroid};
use crate::lp::{check_certificates, solve_lp, DualityReport};
use crate::matroids::{verify_rank_axioms, AxiomReport, DEFAULT_MATROID_BOUND};
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::{wire, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    VerifyCore,
    Audit,
    CheckPerfect,
    CheckMatroid,
    TdiWitness,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::VerifyCore => "verify-core",
            Command::Audit => "audit",
            Command::CheckPerfect => "check-perfect",
            Command::CheckMatroid => "check-matroid",
            Command::TdiWitness => "tdi-witness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub imputation_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    /// Overrides the per-command size bound when set; must be at least 1.
    pub size_bound: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Include wall-clock time in the report (makes output run-dependent).
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input_path: input_path.into(),
            imputation_path: None,
            output_format: OutputFormat::Json,
            size_bound: None,
            trials: 50,
            seed: 0,
            timing: false,
        }
    }

    fn bound_or(&self, default: usize) -> usize {
        self.size_bound.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub kind: String,
    /// Agents, vertices or elements.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvePayload {
    pub solution: CoreSolution<Rational>,
    #[serde(with = "wire::scalar")]
    pub worth: Rational,
    pub duality: DualityReport<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerfectionPayload {
    pub report: PerfectionReport,
    pub odd_hole_or_antihole: Option<OddCycle>,
    /// `is_perfect` matches the absence of odd holes and antiholes.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Solve(SolvePayload),
    Core(CoreReport<Rational>),
    Audit(AuditReport<Rational>),
    Perfection(PerfectionPayload),
    Axioms(AxiomReport),
    Tdi(TdiReport<Rational>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub instance: InstanceSummary,
    pub result: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// What a run produced: a report (unless input failed), the process exit
/// code and a diagnostic for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit_code: i32,
    pub diagnostic: Option<String>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Runs one command. Exit codes: 0 success, 1 failed theorem check, 2
/// input error, 3 resource bound exceeded.
pub fn run(config: &RunConfig) -> Outcome {
    let start = Instant::now();
    match dispatch(config) {
        Ok((mut report, diagnostic)) => {
            if config.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let exit_code = if diagnostic.is_some() { EXIT_CHECK_FAILED } else { EXIT_OK };
            Outcome { report: Some(report), exit_code, diagnostic }
        }
        Err(e) => Outcome {
            report: None,
            exit_code: if e.is_resource() { EXIT_RESOURCE } else { EXIT_INPUT },
            diagnostic: Some(format!("error[{}]: {e}", e.code())),
        },
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn summary(game: &GameInstance<Rational>) -> InstanceSummary {
    InstanceSummary { kind: game.kind_name().to_string(), size: game.agent_count() }
}

fn report(command: Command, instance: InstanceSummary, result: Payload) -> Report {
    Report { command, instance, result, timing_ms: None }
}

type Dispatched = (Report, Option<String>);

fn dispatch(config: &RunConfig) -> Result<Dispatched> {
    if config.size_bound == Some(0) {
        return Err(Error::Malformed("--bound must be at least 1".into()));
    }
    let input = read(&config.input_path)?;
    let cmd = config.command;
    match cmd {
        Command::CheckPerfect => {
            let g = parse_graph(&input)?;
            let bound = config.bound_or(DEFAULT_GRAPH_BOUND);
            let rep = is_perfect(&g, bound)?;
            let cycle = find_odd_hole_or_antihole(&g, bound)?;
            let consistent = rep.is_perfect == cycle.is_none();
            let diagnostic = (!consistent).then(|| "perfection check disagrees with the odd hole search".to_string());
            let instance = InstanceSummary { kind: "graph".into(), size: g.vertex_count() };
            let payload = PerfectionPayload { report: rep, odd_hole_or_antihole: cycle, consistent };
            Ok((report(cmd, instance, Payload::Perfection(payload)), diagnostic))
        }
        Command::CheckMatroid => {
            let m = parse_matroid(&input)?;
            let rep = verify_rank_axioms(&m, config.bound_or(DEFAULT_MATROID_BOUND))?;
            let instance = InstanceSummary { kind: format!("{} matroid", m.kind_name()), size: m.ground_size() };
            Ok((report(cmd, instance, Payload::Axioms(rep)), None))
        }
        _ => {
            let game: GameInstance<Rational> = parse_instance(&input, config.bound_or(DEFAULT_MATROID_BOUND))?;
            game_command(config, &game)
        }
    }
}

fn game_command(config: &RunConfig, game: &GameInstance<Rational>) -> Result<Dispatched> {
    let cmd = config.command;
    let instance = summary(game);
    match cmd {
        Command::Solve => {
            let bound = config.bound_or(DEFAULT_MATROID_BOUND);
            let solution = solve_dual_core(game, bound)?;
            let lps = crate::games::build_lps(game, bound)?;
            let duality = check_certificates(&lps.primal, &solve_lp(&lps.primal)?)?;
            let worth = game.worth(game.agents());
            Ok((report(cmd, instance, Payload::Solve(SolvePayload { solution, worth, duality })), None))
        }
        Command::VerifyCore => {
            let path = config
                .imputation_path
                .as_ref()
                .ok_or_else(|| Error::Malformed("verify-core needs --imputation".into()))?;
            let imp: Imputation<Rational> = parse_imputation(&read(path)?)?;
            let rep = verify_core_membership(game, &imp, config.bound_or(DEFAULT_COALITION_BOUND))?;
            Ok((report(cmd, instance, Payload::Core(rep)), None))
        }
        Command::Audit => {
            let rep = equivalence_audit(game, config.trials, config.seed, config.bound_or(DEFAULT_COALITION_BOUND))?;
            let diagnostic = rep.falsified.then(|| {
                "core membership and dual optimality disagree on an instance satisfying the hypothesis".to_string()
            });
            Ok((report(cmd, instance, Payload::Audit(rep)), diagnostic))
        }
        Command::TdiWitness => {
            let default = match game {
                GameInstance::StableSet(_) | GameInstance::Clique(_) => DEFAULT_GRAPH_BOUND,
                _ => DEFAULT_MATROID_BOUND,
            };
            let rep = tdi_witness(game, config.bound_or(default))?;
            let diagnostic = (!rep.witness.found).then(|| format!("no integral optimal dual: {}", rep.note));
            Ok((report(cmd, instance, Payload::Tdi(rep)), diagnostic))
        }
        Command::CheckPerfect | Command::CheckMatroid => unreachable!("handled by dispatch"),
    }
}

/// Renders a report as pretty JSON or as text.
pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(report),
    }
}

fn set(s: &Subset) -> String {
    format!("{{{s}}}")
}

fn imputation_lines(out: &mut String, imp: &Imputation<Rational>) {
    match imp {
        Imputation::Agent(a) => {
            for (k, v) in &a.payoffs {
                let _ = writeln!(out, "  agent {k}: {}", v.to_repr());
            }
        }
        Imputation::Satisfaction(y) => {
            for (q, v) in &y.support {
                let _ = writeln!(out, "  y{}: {}", set(q), v.to_repr());
            }
        }
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} on {} ({} agents)", report.command.name(), report.instance.kind, report.instance.size);
    match &report.result {
        Payload::Solve(p) => {
            let s = &p.solution;
            let _ = writeln!(out, "LP optimum: {}", s.value.to_repr());
            let _ = writeln!(out, "worth: {}", p.worth.to_repr());
            let _ = writeln!(out, "primal integral: {}", s.primal_integral);
            let _ = writeln!(out, "certificates pass: {}", p.duality.all_pass());
            let _ = writeln!(out, "dual optimum:");
            imputation_lines(&mut out, &s.imputation);
        }
        Payload::Core(c) => {
            let _ = writeln!(out, "in core: {}", c.in_core);
            let _ = writeln!(out, "worth {} vs allocated {}", c.worth_total.to_repr(), c.satisfaction_total.to_repr());
            let _ = writeln!(out, "coalitions checked: {}", c.coalitions_checked);
            for v in &c.violations {
                let _ = writeln!(
                    out,
                    "  violated by {}: worth {} > allocated {}",
                    set(&v.coalition),
                    v.worth.to_repr(),
                    v.allocated.to_repr()
                );
            }
        }
        Payload::Audit(a) => {
            let _ = writeln!(out, "worth {} / LP optimum {}", a.worth.to_repr(), a.lp_value.to_repr());
            let _ = writeln!(out, "hypothesis: {} ({})", a.hypothesis_holds, a.hypothesis);
            let _ = writeln!(
                out,
                "dual optimum: in core {}, dual optimal {} ({} violations)",
                a.forward.in_core, a.forward.dual_optimal, a.forward.violations
            );
            let _ = writeln!(
                out,
                "{} trials (seed {}): {} in core and optimal, {} neither, {} disagreements",
                a.trials,
                a.seed,
                a.both_true,
                a.both_false,
                a.disagreements.len()
            );
            let _ = writeln!(out, "falsified: {}", a.falsified);
        }
        Payload::Perfection(p) => {
            let r = &p.report;
            let _ = writeln!(out, "perfect: {} (omega {}, chi {})", r.is_perfect, r.omega, r.chi);
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "imperfect induced subgraph: {}", set(w));
            }
            if let Some(c) = &p.odd_hole_or_antihole {
                let _ = writeln!(out, "odd {:?}: {:?}", c.kind, c.cycle);
            }
            let _ = writeln!(out, "consistent: {}", p.consistent);
        }
        Payload::Axioms(a) => {
            let _ = writeln!(out, "axioms hold: {}", a.ok);
            if let Some(v) = &a.violation {
                let _ = writeln!(out, "first violation: {v}");
            }
        }
        Payload::Tdi(t) => {
            let _ = writeln!(out, "LP optimum: {}", t.lp_value.to_repr());
            let _ = writeln!(out, "integral dual found: {} ({} nodes)", t.witness.found, t.witness.nodes);
            for (q, k) in &t.support {
                let _ = writeln!(out, "  y{}: {k}", set(q));
            }
            let _ = writeln!(out, "note: {}", t.note);
        }
    }
    if let Some(ms) = report.timing_ms {
        let _ = writeln!(out, "time: {ms} ms");
    }
    out
}
