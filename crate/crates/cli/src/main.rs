use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use stlab_core::combination::{combine, thales_points, verify_regions};
use stlab_core::covering::{build_shift_graph, run_covering, verify_cover};
use stlab_core::direction::{
    apply_mobius, dist_deg, is_orthogonal, pi_lambda, sphere_disk_cover, ComplexLinearMap, Direction,
};
use stlab_core::exact::{int, parse_rational, rat};
use stlab_core::incidence::{
    beck_stats, check_bounds, check_rich_bound, count_incidences_fast, count_incidences_naive, rich_lines,
    similar_copies, sum_product,
};
use stlab_core::io::*;
use stlab_core::{GaussianRational, Rational};

/// Exact incidence geometry workbench.
#[derive(Parser)]
#[command(name = "stlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Input file; stdin when absent or `-`.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Output file, written atomically; stdout when absent or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a fixture.
    #[command(subcommand)]
    Gen(Gen),
    /// Count incidences of a system.
    Incidences {
        #[command(flatten)]
        input: Input,
        /// Cross-check against the all-pairs count.
        #[arg(long)]
        naive: bool,
    },
    /// List lines through at least `t` points of a system.
    Rich {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        t: usize,
        /// Constant of the rich-line bound.
        #[arg(long, default_value = "8")]
        c: f64,
        /// Print every rich line, not only the count.
        #[arg(long)]
        list: bool,
    },
    /// Compare the incidence count with C n^{2/3} e^{2/3} + 3n + 3e.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1e70")]
        c: String,
    },
    /// Connecting lines and the richest line of a point set.
    Beck {
        #[command(flatten)]
        input: Input,
    },
    /// |A+A| and |A·A| for a numbers file.
    Sumprod {
        #[command(flatten)]
        input: Input,
        /// Reject zero.
        #[arg(long)]
        strict: bool,
    },
    /// Count similar copies of a pattern inside a target set.
    Similar {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Cover a point cloud with cubes.
    Cover {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        kappa: u32,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute and print the shift graph of a cover file.
    Shiftgraph {
        #[command(flatten)]
        input: Input,
    },
    /// Build regions for a flat bundle.
    Combine {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Direction-space utilities.
    #[command(subcommand)]
    Dirs(Dirs),
    /// Verify an artifact, or run the built-in property suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum Gen {
    /// The grid construction with n = 2k³ points and e = k³ lines.
    Erdos {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// A random system with planted incidences.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Anchors in R⁴ with two families of near-orthogonal flats.
    Bundle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        per_point: usize,
        #[arg(long, default_value_t = 0.0)]
        spread: f64,
        #[command(flatten)]
        output: Output,
    },
    /// A point cloud for the covering.
    Cloud {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        clustered: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Dirs {
    /// Sphere distance in degrees.
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether two directions are orthogonal.
    Orth {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Image of a direction under a linear map given by four entries, or
    /// under the scaling map toward `--center` with `--lambda`.
    Mobius {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["M11", "M12", "M21", "M22"], conflicts_with_all = ["center", "lambda"])]
        matrix: Option<Vec<String>>,
        #[arg(long, requires = "lambda")]
        center: Option<String>,
        #[arg(long, requires = "center")]
        lambda: Option<String>,
    },
    /// Centers of disks of the given diameter covering the sphere.
    CoverSphere {
        delta: f64,
        /// Print the centers, not only the count.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// A cover file to check.
    #[arg(long)]
    cover: Option<PathBuf>,
    /// A regions file to check against `--bundle`.
    #[arg(long, requires = "bundle")]
    regions: Option<PathBuf>,
    #[arg(long)]
    bundle: Option<PathBuf>,
    /// Interior margin for region membership.
    #[arg(long, default_value = "0")]
    margin: String,
}

fn read_input(input: &Input) -> Result<String> {
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_path(p: &PathBuf) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn write_output(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(p) if p.as_os_str() != "-" => write_atomic(p, text).with_context(|| format!("writing {}", p.display())),
        _ => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn direction(s: &str) -> Result<Direction> {
    s.parse().map_err(|e| anyhow::anyhow!("{e}"))
}

fn gaussian(s: &str) -> Result<GaussianRational> {
    s.parse().map_err(|e| anyhow::anyhow!("{e}"))
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| anyhow::anyhow!("{e}"))
}

/// What a command reports besides its output.
enum Status {
    Ok,
    Failed,
}

fn run(cli: Cli) -> Result<Status> {
    match cli.cmd {
        Cmd::Gen(g) => generate(g),
        Cmd::Incidences { input, naive } => {
            let sys = parse_system(&read_input(&input)?)?;
            let i = count_incidences_fast(&sys.points, &sys.lines)?;
            println!("I={i} n={} e={}", sys.points.len(), sys.lines.len());
            if naive {
                let j = count_incidences_naive(&sys.points, &sys.lines)?;
                println!("naive I={j}");
                if i != j {
                    return Ok(Status::Failed);
                }
            }
            Ok(Status::Ok)
        }
        Cmd::Rich { input, t, c, list } => {
            let sys = parse_system(&read_input(&input)?)?;
            if list {
                for r in rich_lines(&sys.points, t)? {
                    println!("{} {}", r.count, r.line);
                }
            }
            let rep = check_rich_bound(&sys.points, t, c)?;
            println!(
                "t={} rich={} bound={:.3} {}",
                rep.t,
                rep.rich,
                rep.bound,
                if rep.violated { "VIOLATED" } else { "ok" }
            );
            Ok(if rep.violated { Status::Failed } else { Status::Ok })
        }
        Cmd::Bounds { input, c } => {
            let c: f64 = c.parse().with_context(|| format!("bad constant {c:?}"))?;
            let sys = parse_system(&read_input(&input)?)?;
            let rep = check_bounds(&sys.points, &sys.lines, c)?;
            println!(
                "I={} n={} e={} C={:e} bound={:.6e} ratio={:.6e} {}",
                rep.incidences,
                rep.n,
                rep.e,
                rep.c,
                rep.st_bound,
                rep.ratio,
                if rep.violated { "VIOLATED" } else { "ok" }
            );
            Ok(if rep.violated { Status::Failed } else { Status::Ok })
        }
        Cmd::Beck { input } => {
            let sys = parse_system(&read_input(&input)?)?;
            let (lines, max) = beck_stats(&sys.points)?;
            println!("connecting_lines={lines} max_rich={max}");
            Ok(Status::Ok)
        }
        Cmd::Sumprod { input, strict } => {
            let a = parse_numbers(&read_input(&input)?)?;
            let (s, p) = sum_product(&a, strict)?;
            println!("sums={s} products={p}");
            Ok(Status::Ok)
        }
        Cmd::Similar { pattern, target } => {
            let a = parse_numbers(&read_path(&pattern)?)?;
            let b = parse_numbers(&read_path(&target)?)?;
            println!("copies={}", similar_copies(&a, &b)?);
            Ok(Status::Ok)
        }
        Cmd::Cover { dim, kappa, r, input, output } => {
            let pts = parse_cloud(&read_input(&input)?)?;
            let res = run_covering(&pts, dim, kappa, r)?;
            let rep = verify_cover(&pts, &res, kappa, r);
            eprintln!("cubes={} orientation={} phases={}", res.cubes.len(), res.orientation, res.stats.phases.len());
            eprintln!("{rep}");
            write_output(&output, &write_cover(&CoverFile::from_result(&pts, &res)?))?;
            Ok(Status::Ok)
        }
        Cmd::Shiftgraph { input } => {
            let file = parse_cover(&read_input(&input)?)?;
            let g = build_shift_graph(&file.cubes, file.kappa)?;
            for (a, b) in &g.edges {
                println!("{a} -> {b}");
            }
            println!("nodes={} edges={} max_in_degree={}", g.nodes, g.edges.len(), g.max_in_degree());
            Ok(Status::Ok)
        }
        Cmd::Combine { r, input, output } => {
            let bundle = parse_bundle(&read_input(&input)?)?;
            let out = combine(&bundle, r)?;
            eprintln!(
                "regions={} eligible={} dropped={} promised={}",
                out.assignments.len(),
                out.eligible,
                out.dropped,
                out.bound
            );
            for w in &out.waived {
                eprintln!("waived: {w}");
            }
            write_output(&output, &write_regions(r, &out.assignments))?;
            Ok(Status::Ok)
        }
        Cmd::Dirs(d) => dirs(d),
        Cmd::Verify(v) => verify(v),
    }
}

fn generate(g: Gen) -> Result<Status> {
    let (text, output) = match g {
        Gen::Erdos { k, output } => {
            if k == 0 {
                bail!("k must be at least 1");
            }
            (write_system(&gen_erdos(k)), output)
        }
        Gen::Random { seed, n, e, output } => (write_system(&gen_random(seed, n, e)), output),
        Gen::Bundle { seed, m, per_point, spread, output } => {
            (write_bundle(&gen_bundle_fixture(m, per_point, spread, seed)?), output)
        }
        Gen::Cloud { seed, n, dim, clustered, output } => {
            if dim == 0 {
                bail!("dimension must be at least 1");
            }
            let shape = if clustered { CloudShape::Clustered } else { CloudShape::Uniform };
            (write_cloud(&gen_cloud(seed, n, dim, shape)), output)
        }
    };
    write_output(&output, &text)?;
    Ok(Status::Ok)
}

fn dirs(d: Dirs) -> Result<Status> {
    match d {
        Dirs::Dist { a, b } => println!("{}", dist_deg(&direction(&a)?, &direction(&b)?)),
        Dirs::Orth { a, b } => println!("{}", is_orthogonal(&direction(&a)?, &direction(&b)?)),
        Dirs::Mobius { a, matrix, center, lambda } => {
            let m = match (matrix, center, lambda) {
                (Some(m), _, _) => {
                    ComplexLinearMap::new(gaussian(&m[0])?, gaussian(&m[1])?, gaussian(&m[2])?, gaussian(&m[3])?)?
                }
                (None, Some(c), Some(l)) => pi_lambda(&direction(&c)?, &rational(&l)?)?,
                _ => bail!("give either --matrix or --center with --lambda"),
            };
            println!("{}", apply_mobius(&m, &direction(&a)?));
        }
        Dirs::CoverSphere { delta, list } => {
            let centers = sphere_disk_cover(delta)?;
            if list {
                for c in &centers {
                    println!("{} {} {}", c.v[0], c.v[1], c.v[2]);
                }
            }
            println!("centers={}", centers.len());
        }
    }
    Ok(Status::Ok)
}

fn verify(v: VerifyArgs) -> Result<Status> {
    let margin = rational(&v.margin)?;
    let mut ok = true;
    let mut any = false;
    if let Some(p) = &v.cover {
        any = true;
        let file = parse_cover(&read_path(p)?)?;
        let (rep, edges) = file.verify();
        println!("{rep}");
        let edges_ok = edges == Some(true);
        println!("recorded edges: {}", if edges_ok { "match" } else { "MISMATCH" });
        ok &= rep.passed() && edges_ok;
    }
    if let (Some(rp), Some(bp)) = (&v.regions, &v.bundle) {
        any = true;
        let (r, assignments) = parse_regions(&read_path(rp)?)?;
        let bundle = parse_bundle(&read_path(bp)?)?;
        let rep = verify_regions(&assignments, &bundle, r, &margin);
        println!("{rep}");
        ok &= rep.passed();
    } else if v.bundle.is_some() {
        bail!("--bundle needs --regions");
    }
    if !any {
        ok = property_suite();
    }
    Ok(if ok { Status::Ok } else { Status::Failed })
}

/// A quick pass over the main identities and checks.
fn property_suite() -> bool {
    let mut all = true;
    let mut check = |name: &str, pass: bool| {
        println!("{:<40} {}", name, if pass { "pass" } else { "FAIL" });
        all &= pass;
    };
    check(
        "grid construction has I = k^4",
        (1..=5u32).all(|k| {
            let s = gen_erdos(k);
            count_incidences_naive(&s.points, &s.lines).ok() == Some((k as u64).pow(4))
        }),
    );
    check(
        "fast and naive incidence counts agree",
        (0..10).all(|seed| {
            let s = gen_random(seed, 80, 80);
            count_incidences_fast(&s.points, &s.lines).ok() == count_incidences_naive(&s.points, &s.lines).ok()
        }),
    );
    let zero = Direction::Finite(GaussianRational::zero());
    check("dist(0, inf) = 180", (dist_deg(&zero, &Direction::Infinity) - 180.0).abs() < 1e-9);
    check(
        "scaling map fixes 1 and -1",
        [1, -1].into_iter().all(|s| {
            let one = Direction::Finite(GaussianRational::one());
            let d = Direction::Finite(GaussianRational::from_ints(s, 0));
            pi_lambda(&one, &rat(1, 3)).is_ok_and(|m| apply_mobius(&m, &d) == d)
        }),
    );
    check(
        "covering guarantees",
        [(1, 1), (2, 1), (2, 2)].into_iter().all(|(d, r)| {
            let pts = gen_cloud(7, 3000, d, CloudShape::Clustered);
            run_covering(&pts, d, 1, r).is_ok_and(|res| verify_cover(&pts, &res, 1, r).passed())
        }),
    );
    check(
        "combination regions verify",
        [0.0, 5.0].into_iter().all(|spread| {
            gen_bundle_fixture(60, 2, spread, 3).is_ok_and(|b| {
                combine(&b, 2).is_ok_and(|out| {
                    !out.assignments.is_empty() && verify_regions(&out.assignments, &b, 2, &int(0)).passed()
                })
            })
        }),
    );
    check("Thales points are antipodal", {
        let p = stlab_core::RVector4::from_ints([1, 2, 3, 4]);
        let q = stlab_core::RVector4::from_ints([-3, 5, 0, 2]);
        let (x, y) = thales_points(&p, &q);
        let mid = (&p + &q).scale(&rat(1, 2));
        let quarter = (&p - &q).norm_sqr() / int(4);
        (&x - &mid).norm_sqr() == quarter && (&y - &mid).norm_sqr() == quarter
    });
    all
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("STLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
