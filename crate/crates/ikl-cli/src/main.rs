//! `ikl`: batch driver for relation checks, ı-canonical tables, oracle
//! comparisons, intertwiner dumps, duality checks and translation matrices.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ikl::canonical::{bruhat_key, compare_with_oracle, ikl_table, KLTable};
use ikl::hecke::{gen_matrices, Flavor};
use ikl::intertwiner::{height_bound, mc_t_inverse, on_first_slot, upsilon_cached, BlockFile, Zeta};
use ikl::ospbridge::{grothendieck_decode, lambda_of, translation_matrix_q1, CharacterReport, TransGen};
use ikl::qgroup::{check_relations, FockSpace, RelationReport, UAction};
use ikl::qsp::{check_irelations, IAction};
use ikl::weights::{
    enumerate_block, format_letter, format_word, leq_b, parse_letter, parse_word, BSeq, Family, RankProfile,
    ThetaWeight,
};

#[derive(Parser)]
#[command(
    name = "ikl",
    version,
    about = "i-canonical bases and KL polynomials on tensor spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Output,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached intertwiner blocks.
    #[arg(long, global = true, env = "IKL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache directory.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for per-block work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    B1,
    C,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenArg {
    E,
    F,
    T,
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Rank parameter: the quantum group is U_q(sl_{k+1}).
    #[arg(long)]
    k: u32,
    /// 0/1 sequence, 0 for V and 1 for W.
    #[arg(long)]
    b: Option<String>,
    /// Shape as a string over V and W, e.g. VW.
    #[arg(long)]
    shape: Option<String>,
    /// Number of V factors, when neither --b nor --shape is given.
    #[arg(long)]
    m: Option<usize>,
    /// Number of W factors, appended after the V factors.
    #[arg(long)]
    n: Option<usize>,
    /// Expected family; a mismatch with k is a usage error.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check all defining relations as matrix identities.
    Relations(SpaceArgs),
    /// ı-KL polynomials t_gf and l_gf for the block of f.
    Klpoly {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        f: String,
    },
    /// Dual ı-KL polynomials with Verma multiplicities decoded at q = 1.
    Dualklpoly {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        f: String,
    },
    /// Compare ı-canonical bases with the Hecke-side KL bases on a pure space.
    CompareHecke {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
    },
    /// Dump the intertwiner block by block.
    Upsilon(SpaceArgs),
    /// Check that T^-1 on the first factor is the Hecke generator H_0 and that
    /// both actions commute.
    SchurCheck(SpaceArgs),
    /// Translation matrix at q = 1 from the block of f.
    Translate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum)]
        gen: GenArg,
        /// Index i, as a fraction or integer.
        #[arg(long)]
        i: Option<String>,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// The order ideal below f with its linearization.
    Block {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        f: String,
    },
}

enum Fail {
    Usage(String),
    Verify(String),
    Internal(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Verify(_) => 1,
            Fail::Usage(_) => 2,
            Fail::Internal(_) => 3,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Fail {
    Fail::Usage(e.to_string())
}

fn internal<E: std::fmt::Display>(e: E) -> Fail {
    Fail::Internal(e.to_string())
}

fn resolve(a: &SpaceArgs) -> Result<(RankProfile, BSeq), Fail> {
    let p = RankProfile::new(a.k).map_err(usage)?;
    if let Some(fam) = a.family {
        let want = match fam {
            FamilyArg::Even => Family::Even,
            FamilyArg::Odd => Family::Odd,
        };
        if want != p.family() {
            return Err(Fail::Usage(format!("k = {} belongs to the {} family", a.k, p.family())));
        }
    }
    let b = match (&a.b, &a.shape, a.m, a.n) {
        (Some(b), None, None, None) => BSeq::parse(b).map_err(usage)?,
        (None, Some(s), None, None) => {
            let bits = s
                .chars()
                .map(|c| match c.to_ascii_uppercase() {
                    'V' => Ok(0u8),
                    'W' => Ok(1u8),
                    _ => Err(Fail::Usage(format!("shape {:?} must use only V and W", s))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if bits.is_empty() {
                return Err(Fail::Usage("empty shape".into()));
            }
            BSeq::from_bits(bits)
        }
        (None, None, m, n) if m.is_some() || n.is_some() => {
            let bits = [vec![0u8; m.unwrap_or(0)], vec![1u8; n.unwrap_or(0)]].concat();
            if bits.is_empty() {
                return Err(Fail::Usage("empty tensor space".into()));
            }
            BSeq::from_bits(bits)
        }
        _ => return Err(Fail::Usage("give exactly one of --b, --shape, or --m/--n".into())),
    };
    Ok((p, b))
}

fn word(p: &RankProfile, b: &BSeq, f: &str) -> Result<Vec<i32>, Fail> {
    let f = parse_word(f).map_err(usage)?;
    p.check_word(&f).map_err(usage)?;
    if f.len() != b.len() {
        return Err(Fail::Usage(format!(
            "word has {} letters, space has {} factors",
            f.len(),
            b.len()
        )));
    }
    Ok(f)
}

fn announce(space: &FockSpace) {
    let blocks = space.theta_blocks();
    let largest = blocks.values().map(|v| v.len()).max().unwrap_or(0);
    eprintln!(
        "space {} (k = {}): dim {}, {} blocks, largest block {}, height bound {}",
        space.shape_label(),
        space.profile().k(),
        space.dim(),
        blocks.len(),
        largest,
        height_bound(space)
    );
}

struct Ctx {
    output: Output,
    cache: Option<PathBuf>,
}

impl Ctx {
    fn cache(&self) -> Option<&Path> {
        self.cache.as_deref()
    }
}

enum Artifact {
    Json(String),
    Csv(String),
}

fn json<T: Serialize>(x: &T) -> Result<Artifact, Fail> {
    let mut s = serde_json::to_string_pretty(x).map_err(internal)?;
    s.push('\n');
    Ok(Artifact::Json(s))
}

fn json_only(ctx: &Ctx) -> Result<(), Fail> {
    if ctx.output == Output::Csv {
        return Err(Fail::Usage(
            "csv output is available for klpoly and dualklpoly only".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct RelationsOut {
    k: u32,
    family: Family,
    shape: String,
    all_pass: bool,
    reports: Vec<RelationReport>,
}

#[derive(Serialize)]
struct DualOut {
    table: KLTable,
    characters: CharacterReport,
}

#[derive(Serialize)]
struct SchurOut {
    k: u32,
    shape: String,
    flavor: Flavor,
    first_generator_matches: bool,
    commuting: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct TranslateOut {
    generator: String,
    source_block: ThetaWeight,
    target_block: ThetaWeight,
    source: Vec<String>,
    target: Vec<String>,
    /// `entries[row][col]`, rows indexed by `target`.
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct BlockOut {
    k: u32,
    b: BSeq,
    top: String,
    elements: Vec<BlockElement>,
    /// Pairs `(i, j)` of element indices with `i <= j` in the order.
    relation: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct BlockElement {
    word: String,
    lambda: String,
}

fn table(ctx: &Ctx, space: &SpaceArgs, f: &str) -> Result<KLTable, Fail> {
    let (p, b) = resolve(space)?;
    let f = word(&p, &b, f)?;
    announce(&FockSpace::new(p, b.clone()));
    ikl_table(&f, &b, p, ctx.cache()).map_err(internal)
}

fn run(cmd: &Cmd, ctx: &Ctx) -> Result<(Artifact, Option<String>), Fail> {
    match cmd {
        Cmd::Relations(a) => {
            json_only(ctx)?;
            let (p, b) = resolve(a)?;
            let space = FockSpace::new(p, b);
            let u = UAction::new(space.clone());
            let mut reports = check_relations(&u);
            reports.extend(check_irelations(&IAction::from_u(u)));
            let all_pass = reports.iter().all(|r| r.passed());
            let out = RelationsOut {
                k: p.k(),
                family: p.family(),
                shape: space.shape_label(),
                all_pass,
                reports,
            };
            let fail = (!all_pass).then(|| "some relations fail".to_string());
            Ok((json(&out)?, fail))
        }
        Cmd::Klpoly { space, f } => {
            let t = table(ctx, space, f)?;
            match ctx.output {
                Output::Json => Ok((json(&t)?, None)),
                Output::Csv => Ok((Artifact::Csv(t.to_csv()), None)),
            }
        }
        Cmd::Dualklpoly { space, f } => {
            let t = table(ctx, space, f)?;
            match ctx.output {
                Output::Csv => Ok((Artifact::Csv(t.to_csv()), None)),
                Output::Json => {
                    let characters = grothendieck_decode(&t).map_err(internal)?;
                    Ok((json(&DualOut { table: t, characters })?, None))
                }
            }
        }
        Cmd::CompareHecke { space, flavor } => {
            json_only(ctx)?;
            let (p, b) = resolve(space)?;
            let flavor = match flavor {
                Some(FlavorArg::B1) => Flavor::B1,
                Some(FlavorArg::C) => Flavor::C,
                Some(FlavorArg::D) => Flavor::D,
                None if b.bits().iter().all(|x| *x == 1) => Flavor::C,
                None => Flavor::D,
            };
            let fs = FockSpace::new(p, b.clone());
            gen_matrices(&fs, flavor).map_err(usage)?;
            announce(&fs);
            let r = compare_with_oracle(p, &b, flavor, ctx.cache()).map_err(internal)?;
            let fail = (!r.equal).then(|| format!("{} mismatches", r.mismatches.len()));
            Ok((json(&r)?, fail))
        }
        Cmd::Upsilon(a) => {
            json_only(ctx)?;
            let (p, b) = resolve(a)?;
            let space = FockSpace::new(p, b);
            announce(&space);
            let ups = upsilon_cached(&UAction::new(space.clone()), ctx.cache()).map_err(internal)?;
            let blocks: Vec<BlockFile> = space.theta_blocks().keys().map(|tw| ups.block(tw).record()).collect();
            Ok((json(&blocks)?, None))
        }
        Cmd::SchurCheck(a) => {
            json_only(ctx)?;
            let (p, b) = resolve(a)?;
            let space = FockSpace::new(p, b.clone());
            let flavor = if b.bits().iter().all(|x| *x == 1) {
                Flavor::C
            } else {
                Flavor::B1
            };
            let gens = gen_matrices(&space, flavor).map_err(usage)?;
            announce(&space);
            let single = FockSpace::new(p, b.prefix(1));
            let u1 = UAction::new(single);
            let ups1 = upsilon_cached(&u1, ctx.cache()).map_err(internal)?;
            let z = Zeta::natural(p).map_err(internal)?;
            let ti = mc_t_inverse(&u1, &ups1, &z).map_err(internal)?;
            let first = on_first_slot(&ti, &space) == gens[0];
            let ia = IAction::new(space.clone());
            let mut failures = Vec::new();
            if !first {
                failures.push("T^-1 on the first factor differs from H_0".to_string());
            }
            for (g, m) in ia.generators() {
                for (s, h) in gens.iter().enumerate() {
                    if (m * h) != (h * m) {
                        failures.push(format!("{:?} and H{} do not commute", g, s));
                    }
                }
            }
            let out = SchurOut {
                k: p.k(),
                shape: space.shape_label(),
                flavor,
                first_generator_matches: first,
                commuting: failures.iter().all(|f| !f.contains("commute")),
                failures: failures.clone(),
            };
            let fail = (!failures.is_empty()).then(|| failures.join("; "));
            Ok((json(&out)?, fail))
        }
        Cmd::Translate { space, f, gen, i, r } => {
            json_only(ctx)?;
            let (p, b) = resolve(space)?;
            let f = word(&p, &b, f)?;
            let g = match (gen, i) {
                (GenArg::T, _) => TransGen::T,
                (_, None) => return Err(Fail::Usage("--i is required for e and f".into())),
                (gen, Some(i)) => {
                    let i = parse_letter(i).map_err(usage)?;
                    if !p.iota_index_set().contains(&i) {
                        let valid: Vec<String> = p.iota_index_set().into_iter().map(format_letter).collect();
                        return Err(Fail::Usage(format!(
                            "index {} is not a coideal index for k = {} (valid: {})",
                            format_letter(i),
                            p.k(),
                            valid.join(", ")
                        )));
                    }
                    match gen {
                        GenArg::E => TransGen::E(i, *r),
                        _ => TransGen::F(i, *r),
                    }
                }
            };
            let fs = FockSpace::new(p, b.clone());
            let ia = IAction::new(fs.clone());
            let tw = ikl::weights::theta_wt(&f, &b);
            let m = translation_matrix_q1(&ia, g, &tw).map_err(|e| match e {
                ikl::ospbridge::OspError::Generator(..) => usage(e),
                e => internal(e),
            })?;
            let out = TranslateOut {
                generator: format!("{:?}", g),
                source_block: m.source_block.clone(),
                target_block: m.target_block.clone(),
                source: m.source.iter().map(|w| format_word(w)).collect(),
                target: m.target.iter().map(|w| format_word(w)).collect(),
                entries: m.entries,
            };
            Ok((json(&out)?, None))
        }
        Cmd::Block { space, f } => {
            json_only(ctx)?;
            let (p, b) = resolve(space)?;
            let f = word(&p, &b, f)?;
            let mut words = enumerate_block(&f, &b, &p);
            words.sort_by(|x, y| (bruhat_key(x, &b), x).cmp(&(bruhat_key(y, &b), y)));
            let mut relation = Vec::new();
            for (i, g) in words.iter().enumerate() {
                for (j, h) in words.iter().enumerate() {
                    if leq_b(g, h, &b) {
                        relation.push((i, j));
                    }
                }
            }
            let elements = words
                .iter()
                .map(|w| BlockElement {
                    word: format_word(w),
                    lambda: lambda_of(w, &b).to_string(),
                })
                .collect();
            let out = BlockOut {
                k: p.k(),
                b: b.clone(),
                top: format_word(&f),
                elements,
                relation,
            };
            Ok((json(&out)?, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(3);
        }
    }
    let ctx = Ctx {
        output: cli.output,
        cache: if cli.no_cache { None } else { cli.cache_dir.clone() },
    };
    let (artifact, verdict) = match run(&cli.cmd, &ctx) {
        Ok(x) => x,
        Err(e) => {
            let (Fail::Usage(m) | Fail::Verify(m) | Fail::Internal(m)) = &e;
            eprintln!("error: {}", m);
            return ExitCode::from(e.code());
        }
    };
    let text = match artifact {
        Artifact::Json(s) | Artifact::Csv(s) => s,
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", e);
        return ExitCode::from(3);
    }
    match verdict {
        Some(msg) => {
            eprintln!("verification failed: {}", msg);
            ExitCode::from(Fail::Verify(msg).code())
        }
        None => ExitCode::SUCCESS,
    }
}
