//! Library side of the `theta` command: argument types, command handlers and
//! report rendering.

pub mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use theta_core::detrep::{self, SymThetaData};
use theta_core::nodal::{self, MultiplicityScheme};
use theta_core::spin::{self, DualGraph};
use theta_core::theta_f2::{self, QuadraticSpace};
use theta_core::{ClassKind, DivisorClass, NodalConfig, PicardLattice};

pub use report::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Degenerate(_) => 3,
            _ => 2,
        }
    }
}

impl From<theta_core::Error> for CliError {
    fn from(e: theta_core::Error) -> Self {
        match e {
            theta_core::Error::Degenerate(m) => CliError::Degenerate(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "theta", version, about = "Exact invariants of Del Pezzo surfaces, spin curves and theta characteristics")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the classes of one kind, or summarise all counts.
    Lattice {
        #[arg(long)]
        degree: u32,
        /// exceptional, root or blowdown; omit for a summary.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Multiplicity scheme of a nodal configuration (TOML file).
    Nodal {
        config: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeKind,
    },
    /// Spin structures on the stable curve given by a dual graph file.
    Spin { graph: PathBuf },
    /// Multiplicity and parity table for irreducible curves.
    SpinTable {
        #[arg(long)]
        genus: u32,
        /// Largest number of nodes.
        #[arg(long)]
        nodes: u32,
    },
    /// Theta characteristics over F2.
    Theta {
        #[arg(value_enum)]
        task: ThetaTask,
        /// Dimension of the symplectic space (zeros task).
        #[arg(long, default_value_t = 6)]
        dim: usize,
        /// Arf invariant of the form (zeros task).
        #[arg(long, default_value_t = 0)]
        arf: u8,
        /// Seed for the random admissible pair (conic-pairs task).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the full listing (aronhold task).
        #[arg(long)]
        list: bool,
    },
    /// Symmetric determinantal constructions on a keyed polynomial file.
    Detrep {
        input: PathBuf,
        #[arg(long, value_enum)]
        action: DetrepAction,
        /// Seed for the shear used by the tangency check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeKind {
    Lines,
    Bitangents,
    Blowdowns,
    Aronhold,
    Doublesix,
    Eventheta,
    Profile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ThetaTask {
    Aronhold,
    ConicPairs,
    Zeros,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetrepAction {
    Quintic,
    Conic,
    Check,
    Quartic,
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Lattice { degree, kind } => cmd_lattice(*degree, kind.as_deref()),
        Command::Nodal { config, scheme } => cmd_nodal(&load_config(config)?, *scheme),
        Command::Spin { graph } => cmd_spin(&read(graph)?.parse()?),
        Command::SpinTable { genus, nodes } => cmd_spin_table(*genus, *nodes),
        Command::Theta {
            task,
            dim,
            arf,
            seed,
            list,
        } => cmd_theta(*task, *dim, *arf, *seed, *list),
        Command::Detrep { input, action, seed } => cmd_detrep(&read(input)?, *action, *seed),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn cmd_lattice(degree: u32, kind: Option<&str>) -> CliResult<Report> {
    let lat = PicardLattice::new(degree)?;
    let Some(kind) = kind else {
        return Ok(lattice_summary(&lat));
    };
    let kind: ClassKind = kind.parse()?;
    let classes = lat.enumerate_classes(kind);
    let rows = classes
        .iter()
        .map(|c| vec![c.to_string(), lat.self_intersection(c).to_string(), lat.canonical_degree(c).to_string()])
        .collect();
    Ok(Report::new()
        .field("degree", degree)
        .field("kind", kind.name())
        .field("count", classes.len())
        .table(&["class", "D.D", "D.K"], rows))
}

fn lattice_summary(lat: &PicardLattice) -> Report {
    let count = |k| lat.enumerate_classes(k).len();
    let lines = lat.enumerate_classes(ClassKind::Exceptional);
    let mut r = Report::new()
        .field("degree", lat.degree())
        .field("exceptional", count(ClassKind::Exceptional))
        .field("roots", count(ClassKind::Root))
        .field("blowdowns", count(ClassKind::BlowDown));
    if lat.degree() == 3 {
        let orbits: std::collections::BTreeSet<DivisorClass> = lat
            .enumerate_classes(ClassKind::BlowDown)
            .into_iter()
            .map(|b| {
                let p = lat.double_six_partner(&b).expect("blow-down class");
                b.min(p)
            })
            .collect();
        r = r.field("double sixes", orbits.len());
    } else {
        let orbits: std::collections::BTreeSet<DivisorClass> = lines
            .iter()
            .map(|l| l.clone().min(lat.geiser(l).expect("same lattice")))
            .collect();
        r = r.field("geiser orbits of lines", orbits.len());
    }
    r.field("weyl order", lat.weyl_order())
}

/// Nodal configuration file: `degree = 2` and `roots = [[...], ...]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub degree: u32,
    #[serde(default)]
    pub roots: Vec<Vec<i64>>,
}

pub fn parse_config(text: &str) -> CliResult<NodalConfig> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
    let lat = PicardLattice::new(file.degree)?;
    Ok(NodalConfig::new(lat, file.roots.into_iter().map(DivisorClass::new).collect())?)
}

fn load_config(path: &Path) -> CliResult<NodalConfig> {
    parse_config(&read(path)?)
}

pub fn cmd_nodal(cfg: &NodalConfig, scheme: SchemeKind) -> CliResult<Report> {
    let head = Report::new()
        .field("degree", cfg.lattice().degree())
        .field("dynkin", cfg.dynkin())
        .field("roots", cfg.roots().len());
    if scheme == SchemeKind::Profile {
        let p = nodal::intersection_profile(cfg)?;
        let mut rows: Vec<Vec<String>> = p
            .rows
            .iter()
            .map(|(name, r)| std::iter::once(name.to_string()).chain(r.iter().map(|v| v.to_string())).collect())
            .collect();
        rows.push(std::iter::once("total".to_string()).chain(p.totals().iter().map(|v| v.to_string())).collect());
        return Ok(head.table(&["family", "D.F=2", "D.F=1", "D.F=0", "D.F=-1", "D.F=-2"], rows));
    }
    let (name, s): (&str, MultiplicityScheme) = match scheme {
        SchemeKind::Lines => ("lines", nodal::line_scheme(cfg)?),
        SchemeKind::Bitangents => ("bitangents", nodal::bitangent_scheme(cfg)?),
        SchemeKind::Blowdowns => ("blowdowns", nodal::blowdown_scheme(cfg)?),
        SchemeKind::Aronhold => ("aronhold", nodal::aronhold_scheme(cfg)?),
        SchemeKind::Doublesix => ("doublesix", nodal::double_six_scheme(cfg)?),
        SchemeKind::Eventheta => ("eventheta", nodal::even_theta_scheme(cfg)?),
        SchemeKind::Profile => unreachable!("handled above"),
    };
    let rows = s
        .points
        .iter()
        .map(|p| vec![p.representative.to_string(), p.multiplicity.to_string()])
        .collect();
    let hist = s
        .histogram()
        .iter()
        .map(|(m, n)| vec![m.to_string(), n.to_string()])
        .collect();
    Ok(head
        .field("scheme", name)
        .field("points", s.points.len())
        .field("total", s.total())
        .table(&["representative", "multiplicity"], rows)
        .table(&["multiplicity", "points"], hist))
}

fn edge_set(delta: &[usize]) -> String {
    let inner: Vec<String> = delta.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn cmd_spin(graph: &DualGraph) -> CliResult<Report> {
    let supports = spin::spin_scheme(graph)?;
    let b1 = graph.betti(&graph.all_edges());
    let rows = supports
        .iter()
        .map(|s| vec![edge_set(&s.delta), s.count.to_string(), s.multiplicity.to_string()])
        .collect();
    let mut by_mult: BTreeMap<u128, u128> = BTreeMap::new();
    for s in &supports {
        *by_mult.entry(s.multiplicity).or_default() += s.count;
    }
    let degree: u128 = supports.iter().map(|s| s.count * s.multiplicity).sum();
    let irreducible = graph.vertex_count() == 1;
    let parity: Option<BTreeMap<u128, (u128, u128)>> = if irreducible {
        let rows = spin::spin_table_irreducible(graph.genus() as u32, graph.edge_count() as u32)?;
        Some(rows.iter().map(|r| (r.multiplicity, (r.odd, r.even))).collect())
    } else {
        None
    };
    let mult_rows = by_mult
        .iter()
        .map(|(m, n)| {
            let (odd, even) = match parity.as_ref().and_then(|p| p.get(m)) {
                Some((o, e)) => (o.to_string(), e.to_string()),
                None => ("-".to_string(), "-".to_string()),
            };
            vec![m.to_string(), n.to_string(), odd, even]
        })
        .collect();
    Ok(Report::new()
        .field("vertices", graph.vertex_count())
        .field("nodes", graph.edge_count())
        .field("genus", graph.genus())
        .field("b1", b1)
        .field("even subsets", supports.len())
        .field("degree", degree)
        .table(&["support", "count", "multiplicity"], rows)
        .table(&["multiplicity", "spin structures", "odd", "even"], mult_rows))
}

pub fn cmd_spin_table(genus: u32, nodes: u32) -> CliResult<Report> {
    let t = spin::parity_table(genus, nodes)?;
    let mut header = vec![String::new()];
    header.extend(t.header());
    let rows = t
        .rows()
        .into_iter()
        .map(|(label, cells)| {
            std::iter::once(label)
                .chain(cells.iter().map(|c| c.map_or("-".to_string(), |v| v.to_string())))
                .collect()
        })
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    Ok(Report::new().table(&header_refs, rows))
}

pub fn cmd_theta(task: ThetaTask, dim: usize, arf: u8, seed: u64, list: bool) -> CliResult<Report> {
    match task {
        ThetaTask::Aronhold => {
            let sets = theta_f2::enumerate_aronhold();
            let mut fibers: BTreeMap<theta_f2::EvenSubsetClass, usize> = BTreeMap::new();
            let mut listing = Vec::new();
            for s in &sets {
                let e = theta_f2::even_theta_of_aronhold(s)?;
                *fibers.entry(e).or_default() += 1;
                if list {
                    let members: Vec<String> = s.iter().map(|t| t.to_string()).collect();
                    listing.push(vec![e.to_string(), members.join(" ")]);
                }
            }
            let sizes: std::collections::BTreeSet<usize> = fibers.values().copied().collect();
            let per_class = sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
            let mut r = Report::new()
                .field("odd thetas", theta_f2::EvenSubsetClass::odd().len())
                .field("even thetas", theta_f2::EvenSubsetClass::even().len())
                .field("aronhold sets", sets.len())
                .field("even classes", fibers.len())
                .field("sets per even class", per_class);
            if list {
                listing.sort();
                r = r.table(&["even theta", "aronhold set"], listing);
            }
            Ok(r)
        }
        ThetaTask::ConicPairs => {
            let c = theta_f2::count_conic_pairs(seed);
            Ok(Report::new()
                .field("genus", 6)
                .field("seed", seed)
                .field("quotient zeros", c.quotient_zeros)
                .field("Z", c.z)
                .field("pairs", c.pairs))
        }
        ThetaTask::Zeros => {
            if dim == 0 || dim % 2 == 1 {
                return Err(CliError::Input(format!("--dim must be a positive even number, got {dim}")));
            }
            if arf > 1 {
                return Err(CliError::Input(format!("--arf must be 0 or 1, got {arf}")));
            }
            let q = QuadraticSpace::with_arf(dim / 2, arf)?;
            let zeros = q.count_zeros();
            Ok(Report::new()
                .field("dim", dim)
                .field("arf", arf)
                .field("zeros", zeros)
                .field("nonzeros", (1u64 << dim) - zeros))
        }
    }
}

const DETREP_KEYS: [&str; 10] = ["L11", "L12", "L22", "Q1", "Q2", "H", "F", "T", "L", "Q"];

pub fn cmd_detrep(text: &str, action: DetrepAction, seed: u64) -> CliResult<Report> {
    let block = detrep::parse_block(text, &DETREP_KEYS)?;
    let data = || -> CliResult<SymThetaData> {
        let get = |k: &str| {
            block
                .get(k)
                .cloned()
                .ok_or_else(|| CliError::Input(format!("missing key {k}")))
        };
        Ok(SymThetaData::new(get("L11")?, get("L12")?, get("L22")?, get("Q1")?, get("Q2")?, get("H")?)?)
    };
    match action {
        DetrepAction::Quintic => {
            let f = detrep::discriminant_quintic(&data()?)?;
            Ok(Report::new().field("F", &f).field("degree", 5).field("terms", f.len()))
        }
        DetrepAction::Conic => {
            let t = detrep::contact_conic(&data()?)?;
            Ok(Report::new().field("T", &t).field("degree", 2))
        }
        DetrepAction::Check => {
            let (f, t) = match (block.get("F"), block.get("T")) {
                (Some(f), Some(t)) => (f.clone(), t.clone()),
                (None, None) => {
                    let d = data()?;
                    (detrep::discriminant_quintic(&d)?, detrep::contact_conic(&d)?)
                }
                _ => return Err(CliError::Input("check needs both F and T, or full matrix data".into())),
            };
            let rep = detrep::total_tangency_check(&f, &t, seed)?;
            let mults: Vec<String> = rep.multiplicities.iter().map(|(m, d)| format!("{d}^{m}")).collect();
            Ok(Report::new()
                .field("F", &f)
                .field("T", &t)
                .field("seed", seed)
                .field("shear", format!("x0 -> x0 + {}*x2, x1 -> x1 + {}*x2", rep.shear[0], rep.shear[1]))
                .field("resultant", &rep.resultant)
                .field("factor degrees^multiplicities", if mults.is_empty() { "-".to_string() } else { mults.join(" ") })
                .field("verdict", rep.verdict))
        }
        DetrepAction::Quartic => {
            let get = |k: &str| {
                block
                    .get(k)
                    .cloned()
                    .ok_or_else(|| CliError::Input(format!("quartic needs keys L, Q and H; missing {k}")))
            };
            let out = detrep::quartic_from_odd_theta(&get("L")?, &get("Q")?, &get("H")?)?;
            Ok(Report::new()
                .field("F", &out.quartic)
                .field("bitangent", &out.bitangent)
                .field("(F + Q^2) / L", &out.cofactor)
                .line("bitangent verified"))
        }
    }
}
