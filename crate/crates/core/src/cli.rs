//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::datum::{parse_datum_json, validate_datum, ValidationSample};
use crate::error::{Error, Result};
use crate::iota::{check_prefix_constraints, IotaDescriptor, IotaSequence};
use crate::monster::{self, load_charges, ChargeTable, MonsterConfig};
use crate::oracle::{self, bfs_image, character, default_window};
use crate::polyhedral::{
    check_positivity, gamma_member_all_imaginary, gamma_member_single_real,
    generate_theta, generate_theta_excluding, rank2_member, rank3_member, GammaTester,
    ThetaLimits, Verdict,
};
use crate::presets;
use crate::zinfty::{PathVector, SequenceCrystal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "polycrystal", version, about = "Explore the crystal B(infinity) as integer sequences")]
struct Cli {
    #[command(flatten)]
    source: SourceArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct SourceArgs {
    /// JSON datum descriptor (file path or inline object).
    #[arg(long, global = true)]
    datum: Option<String>,
    /// JSON sequence descriptor (file path or inline object).
    #[arg(long, global = true)]
    iota: Option<String>,
    /// Rank-2 preset `a,b,c`.
    #[arg(long, global = true, value_delimiter = ',')]
    rank2: Option<Vec<i64>>,
    /// Rank-3 preset `a,b,c,d,e,f,g,h`.
    #[arg(long, global = true, value_delimiter = ',')]
    rank3: Option<Vec<i64>>,
    /// Monster preset.
    #[arg(long, global = true, value_enum)]
    monster: Option<MonsterPreset>,
    /// Charge file of `<level> <multiplicity>` lines, merged over the defaults.
    #[arg(long, global = true)]
    charges: Option<PathBuf>,
    /// Highest Monster level kept; higher levels get multiplicity zero.
    #[arg(long, global = true)]
    max_level: Option<i64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MonsterPreset {
    Toy,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
struct ThetaArgs {
    /// Position window for forms.
    #[arg(long, default_value_t = 12)]
    window: usize,
    /// Maximum number of forms kept.
    #[arg(long, default_value_t = 2_000_000)]
    cap: usize,
    /// Drop forms with a coefficient larger than this in absolute value.
    #[arg(long)]
    coeff_bound: Option<i64>,
}

impl ThetaArgs {
    fn limits(&self) -> Result<ThetaLimits> {
        if self.window == 0 {
            return Err(Error::input("window must be at least 1"));
        }
        Ok(ThetaLimits::new(self.window)
            .with_max_forms(self.cap)
            .with_max_coeff(self.coeff_bound))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    General,
    SingleReal,
    AllImaginary,
    Rank2,
    Rank3,
    Monster,
    Oracle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check datum axioms, sequence constraints and positivity.
    Validate {
        #[command(flatten)]
        theta: ThetaArgs,
    },
    /// List the image up to a degree.
    Enumerate {
        #[arg(long)]
        depth: u64,
        /// Positions exposed to the search (default 3·depth).
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a vector lies in the image.
    Member {
        /// Vector as "[x_N,...,x_1]".
        #[arg(long)]
        vector: String,
        #[arg(long, value_enum, default_value = "general")]
        method: Method,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print a window of the form set.
    Theta {
        #[command(flatten)]
        theta: ThetaArgs,
        /// Generate from `x_s` without `S_t`, given as `s,t`.
        #[arg(long, value_delimiter = ',')]
        exclude: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight histogram of the image by degree.
    Char {
        #[arg(long)]
        depth: u64,
        #[arg(long)]
        window: Option<usize>,
        /// Merge Monster copies of a level.
        #[arg(long)]
        collapse_levels: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the crystal graph.
    Graph {
        #[arg(long)]
        depth: u64,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monster formulas and the closed-form test.
    Monster {
        #[command(subcommand)]
        command: MonsterCommand,
    },
}

#[derive(Subcommand, Debug)]
enum MonsterCommand {
    /// Closed-form membership for the Monster sequence.
    Member {
        #[arg(long)]
        vector: String,
    },
    /// Position `b(n)`.
    BOfN { n: u64 },
    /// `σ(n) = c(1) + … + c(n)`.
    Sigma { n: u64 },
}

/// Resolved configuration shared by the subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub crystal: SequenceCrystal,
    pub label: String,
    pub preset: Preset,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    Rank2([i64; 3]),
    Rank3([i64; 8]),
    Monster,
    Custom,
}

fn read_json_arg(arg: &str) -> Result<(String, PathBuf)> {
    if arg.trim_start().starts_with('{') {
        Ok((arg.to_string(), PathBuf::from(".")))
    } else {
        let path = Path::new(arg);
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((text, base))
    }
}

fn monster_config(src: &SourceArgs, preset: Option<MonsterPreset>) -> Result<MonsterConfig> {
    let charges = match (&src.charges, preset) {
        (Some(path), _) => load_charges(path)?,
        (None, Some(MonsterPreset::Toy)) => ChargeTable::from_pairs(&[(1, 2), (2, 1)])?,
        (None, _) => ChargeTable::embedded(),
    };
    MonsterConfig::new(charges, src.max_level.unwrap_or(2))
}

fn resolve(src: &SourceArgs) -> Result<RunConfig> {
    let chosen = [
        src.datum.is_some(),
        src.rank2.is_some(),
        src.rank3.is_some(),
        src.monster.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if chosen != 1 {
        return Err(Error::input(
            "choose exactly one of --datum, --rank2, --rank3, --monster",
        ));
    }
    if let Some(v) = &src.rank2 {
        let p: [i64; 3] = v[..]
            .try_into()
            .map_err(|_| Error::input("--rank2 takes three values a,b,c"))?;
        return Ok(RunConfig {
            crystal: presets::rank2(p[0], p[1], p[2])?,
            label: format!("rank2({},{},{})", p[0], p[1], p[2]),
            preset: Preset::Rank2(p),
        });
    }
    if let Some(v) = &src.rank3 {
        let p: [i64; 8] = v[..]
            .try_into()
            .map_err(|_| Error::input("--rank3 takes eight values a,...,h"))?;
        return Ok(RunConfig {
            crystal: presets::rank3(p)?,
            label: format!("rank3({v:?})"),
            preset: Preset::Rank3(p),
        });
    }
    if let Some(m) = src.monster {
        let cfg = monster_config(src, Some(m))?;
        return Ok(RunConfig {
            crystal: presets::monster(cfg),
            label: format!("monster({m:?})").to_lowercase(),
            preset: Preset::Monster,
        });
    }
    let (text, base) = read_json_arg(src.datum.as_deref().unwrap())?;
    let datum = parse_datum_json(&text, &base)?;
    let iota = match (&src.iota, datum.monster_config()) {
        (Some(arg), _) => {
            let (text, _) = read_json_arg(arg)?;
            serde_json::from_str::<IotaDescriptor>(&text)?.build(&datum)?
        }
        (None, Some(cfg)) => IotaSequence::monster(cfg.clone()),
        (None, None) => {
            let ids = datum.explicit_indices().expect("explicit datum").to_vec();
            IotaSequence::periodic(&datum, vec![], ids)?
        }
    };
    let preset = if datum.monster_config().is_some() {
        Preset::Monster
    } else {
        Preset::Custom
    };
    Ok(RunConfig {
        crystal: SequenceCrystal::new(Arc::new(datum), Arc::new(iota)),
        label: "custom".into(),
        preset,
    })
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, text: &str, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => std::fs::write(p, text)?,
            None => self.out.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Runs the command line with the given arguments; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<i32> {
    if let Command::Monster { command } = &cli.command {
        return cmd_monster(&cli.source, command, io);
    }
    let cfg = resolve(&cli.source)?;
    match &cli.command {
        Command::Validate { theta } => cmd_validate(&cfg, theta, io),
        Command::Enumerate {
            depth,
            window,
            format,
            out,
        } => cmd_enumerate(&cfg, *depth, *window, *format, out.as_deref(), io),
        Command::Member {
            vector,
            method,
            theta,
            format,
        } => cmd_member(&cfg, vector, *method, theta, *format, io),
        Command::Theta {
            theta,
            exclude,
            format,
            out,
        } => cmd_theta(&cfg, theta, exclude.as_deref(), *format, out.as_deref(), io),
        Command::Char {
            depth,
            window,
            collapse_levels,
            format,
            out,
        } => cmd_char(&cfg, *depth, *window, *collapse_levels, *format, out.as_deref(), io),
        Command::Graph {
            depth,
            window,
            format,
            out,
        } => cmd_graph(&cfg, *depth, *window, *format, out.as_deref(), io),
        Command::Monster { .. } => unreachable!(),
    }
}

fn cmd_validate(cfg: &RunConfig, theta: &ThetaArgs, io: &mut Io) -> Result<i32> {
    let z = &cfg.crystal;
    let mut ok = true;
    let violations = validate_datum(z.datum(), ValidationSample::default());
    if violations.is_empty() {
        writeln!(io.out, "datum: ok")?;
    } else {
        ok = false;
        writeln!(io.out, "datum: {} violation(s)", violations.len())?;
        for v in &violations {
            writeln!(io.out, "  {v}")?;
        }
    }
    let n = theta.window;
    let bound = match z.iota().monster_config() {
        Some(m) => (m.b(m.max_level() as u64 + 1) as usize).max(2 * n),
        None => 2 * n,
    };
    let report = check_prefix_constraints(z.iota(), n, bound);
    if report.is_ok() {
        writeln!(io.out, "sequence (positions 1..{n}): ok")?;
    } else {
        ok = false;
        for k in &report.adjacency {
            writeln!(io.out, "sequence: i_{k} = i_{}", k + 1)?;
        }
        for (i, at) in &report.non_recurring {
            writeln!(io.out, "sequence: index {i} recurs only at {at} > {bound}")?;
        }
    }
    if !ok {
        writeln!(io.out, "positivity: skipped")?;
        return Ok(EXIT_NEGATIVE);
    }
    let th = generate_theta(z, &theta.limits()?);
    let pv = check_positivity(z, &th);
    let scope = format!(
        "window {n}, {} forms{}{}",
        th.len(),
        if th.cap_hit { ", cap reached" } else { "" },
        if th.oversized > 0 { ", coefficient bound applied" } else { "" }
    );
    if pv.is_empty() {
        writeln!(io.out, "positivity ({scope}): ok")?;
    } else {
        ok = false;
        writeln!(io.out, "positivity ({scope}): {} violation(s)", pv.len())?;
        for v in pv.iter().take(20) {
            writeln!(io.out, "  {} has coefficient {} at x_{}", v.form, v.coeff, v.position)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn check_depth_window(depth: u64, window: Option<usize>) -> Result<usize> {
    let w = window.unwrap_or_else(|| default_window(depth));
    if w == 0 {
        return Err(Error::input("window must be at least 1"));
    }
    Ok(w)
}

fn cmd_enumerate(
    cfg: &RunConfig,
    depth: u64,
    window: Option<usize>,
    format: Format,
    out: Option<&Path>,
    io: &mut Io,
) -> Result<i32> {
    let window = check_depth_window(depth, window)?;
    let z = &cfg.crystal;
    let g = bfs_image(z, depth, window);
    let text = match format {
        Format::Table => g
            .nodes
            .iter()
            .map(|x| format!("{}\t{}\t{}\n", x.degree(), x, z.wt(x)))
            .collect(),
        Format::Json => oracle::export_json(&g) + "\n",
        Format::Dot => oracle::export_dot(&g),
    };
    io.emit(&text, out)?;
    writeln!(
        io.err,
        "{}: {} nodes, depth {depth}, window {window}, {} step(s) left the window",
        cfg.label,
        g.nodes.len(),
        g.escaped
    )?;
    Ok(EXIT_OK)
}

/// Closed-form methods only decide in or out.
enum Outcome {
    Full(Verdict),
    Closed(bool),
}

fn cmd_member(
    cfg: &RunConfig,
    vector: &str,
    method: Method,
    theta: &ThetaArgs,
    format: Format,
    io: &mut Io,
) -> Result<i32> {
    let x: PathVector = vector.parse()?;
    let z = &cfg.crystal;
    let mut stats = None;
    let outcome = match method {
        Method::General => {
            let tester = GammaTester::new(z, theta.limits()?)?;
            stats = Some(serde_json::to_value(tester.stats())?);
            Outcome::Full(tester.verdict(&x))
        }
        Method::SingleReal => Outcome::Closed(gamma_member_single_real(z, &x)?),
        Method::AllImaginary => Outcome::Closed(gamma_member_all_imaginary(z, &x)?),
        Method::Rank2 => match cfg.preset {
            Preset::Rank2([a, b, c]) => Outcome::Closed(rank2_member(&x, a, b, c)),
            _ => return Err(Error::Misuse("rank2 method needs --rank2".into())),
        },
        Method::Rank3 => match cfg.preset {
            Preset::Rank3(p) => Outcome::Closed(rank3_member(&x, p)),
            _ => return Err(Error::Misuse("rank3 method needs --rank3".into())),
        },
        Method::Monster => {
            let m = z
                .iota()
                .monster_config()
                .ok_or_else(|| Error::Misuse("monster method needs a monster datum".into()))?;
            Outcome::Closed(monster::monster_member(&x, m)?)
        }
        Method::Oracle => {
            let depth = x.degree();
            let window = x.max_position().unwrap_or(1).max(default_window(depth));
            Outcome::Closed(bfs_image(z, depth, window).node_set().contains(&x))
        }
    };
    let (label, code) = match &outcome {
        Outcome::Closed(true) | Outcome::Full(Verdict::In) => ("in".to_string(), EXIT_OK),
        Outcome::Closed(false) => ("out".to_string(), EXIT_NEGATIVE),
        Outcome::Full(Verdict::Out(c)) => (format!("out: {c}"), EXIT_NEGATIVE),
        Outcome::Full(Verdict::Unknown { reason }) => (format!("unknown: {reason}"), EXIT_UNKNOWN),
    };
    match format {
        Format::Json => {
            let result = match &outcome {
                Outcome::Closed(b) => json!({ "verdict": if *b { "in" } else { "out" } }),
                Outcome::Full(v) => serde_json::to_value(v)?,
            };
            let obj = json!({
                "vector": x.to_string(),
                "method": format!("{method:?}").to_lowercase(),
                "result": result,
                "theta": stats,
            });
            writeln!(io.out, "{}", serde_json::to_string_pretty(&obj)?)?;
        }
        _ => writeln!(io.out, "{label}")?,
    }
    Ok(code)
}

fn cmd_theta(
    cfg: &RunConfig,
    theta: &ThetaArgs,
    exclude: Option<&[usize]>,
    format: Format,
    out: Option<&Path>,
    io: &mut Io,
) -> Result<i32> {
    let z = &cfg.crystal;
    let limits = theta.limits()?;
    let th = match exclude {
        Some([s, t]) => {
            if !(1 <= *s && s < t) {
                return Err(Error::input("--exclude needs 1 <= s < t"));
            }
            generate_theta_excluding(z, *s, *t, &limits)
        }
        Some(_) => return Err(Error::input("--exclude takes two values s,t")),
        None => generate_theta(z, &limits),
    };
    let forms = th.sorted();
    let text = match format {
        Format::Json => {
            let obj = json!({
                "window": th.window,
                "saturated": th.saturated(),
                "fixpoint": th.fixpoint,
                "cap_hit": th.cap_hit,
                "escaped": th.escaped,
                "oversized": th.oversized,
                "forms": forms,
            });
            serde_json::to_string_pretty(&obj)? + "\n"
        }
        _ => forms.iter().map(|f| format!("ψ = {f}\n")).collect(),
    };
    io.emit(&text, out)?;
    writeln!(
        io.err,
        "{} forms, window {}, saturated {}, cap hit {}, escaped {}, over bound {}",
        th.len(),
        th.window,
        th.saturated(),
        th.cap_hit,
        th.escaped,
        th.oversized
    )?;
    Ok(if th.cap_hit { EXIT_UNKNOWN } else { EXIT_OK })
}

fn cmd_char(
    cfg: &RunConfig,
    depth: u64,
    window: Option<usize>,
    collapse: bool,
    format: Format,
    out: Option<&Path>,
    io: &mut Io,
) -> Result<i32> {
    let window = check_depth_window(depth, window)?;
    let z = &cfg.crystal;
    let g = bfs_image(z, depth, window);
    let ch = character(z, &g, collapse);
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = ch
                .iter()
                .flat_map(|(d, m)| {
                    m.iter()
                        .map(move |(w, c)| json!({ "degree": d, "weight": w, "count": c }))
                })
                .collect();
            serde_json::to_string_pretty(&rows)? + "\n"
        }
        _ => ch
            .iter()
            .flat_map(|(d, m)| m.iter().map(move |(w, c)| format!("{d}\t{w}\t{c}\n")))
            .collect(),
    };
    io.emit(&text, out)?;
    Ok(EXIT_OK)
}

fn cmd_graph(
    cfg: &RunConfig,
    depth: u64,
    window: Option<usize>,
    format: Format,
    out: Option<&Path>,
    io: &mut Io,
) -> Result<i32> {
    let window = check_depth_window(depth, window)?;
    let g = bfs_image(&cfg.crystal, depth, window);
    let text = match format {
        Format::Json => oracle::export_json(&g) + "\n",
        _ => oracle::export_dot(&g),
    };
    io.emit(&text, out)?;
    Ok(EXIT_OK)
}

fn cmd_monster(src: &SourceArgs, command: &MonsterCommand, io: &mut Io) -> Result<i32> {
    let table = match &src.charges {
        Some(path) => load_charges(path)?,
        None if matches!(src.monster, Some(MonsterPreset::Toy)) => {
            ChargeTable::from_pairs(&[(1, 2), (2, 1)])?
        }
        None => ChargeTable::embedded(),
    };
    match command {
        MonsterCommand::BOfN { n } => {
            writeln!(io.out, "{}", monster::b(*n, &table)?)?;
            Ok(EXIT_OK)
        }
        MonsterCommand::Sigma { n } => {
            writeln!(io.out, "{}", monster::sigma_sum(*n, &table)?)?;
            Ok(EXIT_OK)
        }
        MonsterCommand::Member { vector } => {
            let x: PathVector = vector.parse()?;
            let cfg = MonsterConfig::new(table, src.max_level.unwrap_or(2))?;
            let inside = monster::monster_member(&x, &cfg)?;
            writeln!(io.out, "{}", if inside { "in" } else { "out" })?;
            Ok(if inside { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}
