//! `graphprod`: command-line access to normal forms, hyperplanes, balls,
//! automorphism decomposition and the invariant suites.
//!
//! Document arguments are inline JSON (anything starting with `[` or `{`)
//! or paths to JSON files. Results go to stdout as JSON; diagnostics go to
//! stderr. Exit codes: 0 success, 1 input error, 2 a negative verdict
//! (not conjugating, not an isomorphism, failed verification).

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graphprod::checks::{run_suite, Suite, VerifyConfig};
use graphprod::io;
use graphprod::{Error, FromImages, GraphProduct, GroupElement, SimplicialGraph, Vertex};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "graphprod", version, about = "Graph products of groups: words, hyperplanes, automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical normal form of a word.
    Reduce { spec: String, word: String },
    /// Normal form of the product of two words.
    Mul { spec: String, left: String, right: String },
    /// Normal form of the inverse of a word.
    Inv { spec: String, word: String },
    /// Distance between two elements in the quasi-median graph.
    Dist { spec: String, left: String, right: String },
    /// Hyperplane dual to the edge from `word` to `word·syllable`.
    Hyperplane { spec: String, word: String, syllable: String },
    /// Whether a hyperplane separates two elements.
    Separates { spec: String, hyperplane: String, left: String, right: String },
    /// Whether two hyperplanes are transverse.
    Transverse { spec: String, first: String, second: String },
    /// Dump of the ball of given radius around the identity.
    Ball {
        spec: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Davis complex ball instead of the quasi-median graph.
        #[arg(long)]
        davis: bool,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Transversality graph of the hyperplanes of a ball.
    TransversalityGraph {
        spec: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Connectivity, girth and the molecular/atomic conditions of a graph.
    Classify { graph: String },
    /// A separating intersection of links, if any.
    Sil { graph: String },
    /// Whether the outer automorphism group is finite.
    OutFinite { spec: String },
    /// Decompose conjugating data into partial conjugations and a local part.
    Decompose { source: String, target: String, data: String },
    /// Recognise conjugating data from images of vertex-group elements.
    FromImages { spec: String, images: String },
    /// A rigid element of an atomic graph product.
    Rigid { spec: String },
    /// Local automorphisms fixing an element.
    FixingLocals { spec: String, word: String },
    /// Replay the invariant suites on a ball.
    Verify {
        spec: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// An outcome that is not an input error but should exit with status 2.
struct Negative(Value);

fn product(arg: &str) -> Result<GraphProduct, Error> {
    io::parse_product(&io::read_document(arg)?)
}

fn word(gp: &GraphProduct, arg: &str) -> Result<graphprod::NormalForm, Error> {
    Ok(gp.reduce(&io::word_from_json(gp, &io::read_document(arg)?)?))
}

/// Accepts a graph document or a product spec containing one.
fn graph(arg: &str) -> Result<SimplicialGraph, Error> {
    let doc = io::read_document(arg)?;
    match doc.get("graph") {
        Some(g) if doc.get("groups").is_some() => io::parse_graph(g),
        _ => io::parse_graph(&doc),
    }
}

fn run(command: Command) -> Result<Result<Value, Negative>, Error> {
    let out = match command {
        Command::Reduce { spec, word: w } => {
            let gp = product(&spec)?;
            let nf = word(&gp, &w)?;
            json!({"normal_form": io::word_to_json(&gp, &nf), "length": nf.len()})
        }
        Command::Mul { spec, left, right } => {
            let gp = product(&spec)?;
            let p = gp.mul(&word(&gp, &left)?, &word(&gp, &right)?);
            json!({"product": io::word_to_json(&gp, &p), "length": p.len()})
        }
        Command::Inv { spec, word: w } => {
            let gp = product(&spec)?;
            json!({"inverse": io::word_to_json(&gp, &gp.inv(&word(&gp, &w)?))})
        }
        Command::Dist { spec, left, right } => {
            let gp = product(&spec)?;
            json!(gp.distance(&word(&gp, &left)?, &word(&gp, &right)?))
        }
        Command::Hyperplane { spec, word: w, syllable } => {
            let gp = product(&spec)?;
            let g = word(&gp, &w)?;
            let s: GroupElement = io::syllable_from_json(&gp, &io::read_document(&syllable)?, "syllable")?;
            io::hyperplane_to_json(&gp, &gp.hyperplane_of_edge(&g, s)?)
        }
        Command::Separates { spec, hyperplane, left, right } => {
            let gp = product(&spec)?;
            let j = io::hyperplane_from_json(&gp, &io::read_document(&hyperplane)?)?;
            let (x, y) = (word(&gp, &left)?, word(&gp, &right)?);
            json!({
                "separates": gp.separates(&j, &x, &y),
                "sector_left": gp.sector_of(&j, &x).value(),
                "sector_right": gp.sector_of(&j, &y).value(),
            })
        }
        Command::Transverse { spec, first, second } => {
            let gp = product(&spec)?;
            let a = io::hyperplane_from_json(&gp, &io::read_document(&first)?)?;
            let b = io::hyperplane_from_json(&gp, &io::read_document(&second)?)?;
            json!({"transverse": gp.transverse(&a, &b)})
        }
        Command::Ball { spec, radius, davis, dot } => {
            let gp = product(&spec)?;
            if davis {
                let ball = gp.build_davis_ball(radius)?;
                if dot {
                    print!("{}", io::davis_ball_to_dot(&gp, &ball));
                    return Ok(Ok(Value::Null));
                }
                io::davis_ball_to_json(&gp, &ball)
            } else {
                let ball = gp.build_ball(radius)?;
                if dot {
                    print!("{}", io::qm_ball_to_dot(&gp, &ball));
                    return Ok(Ok(Value::Null));
                }
                io::qm_ball_to_json(&gp, &ball)
            }
        }
        Command::TransversalityGraph { spec, radius } => {
            let gp = product(&spec)?;
            let ball = gp.build_ball(radius)?;
            io::transversality_graph_to_json(&gp, &gp.transversality_graph(&ball))
        }
        Command::Classify { graph: g } => {
            let g = graph(&g)?;
            io::classification_to_json(&g, &g.classify())
        }
        Command::Sil { graph: g } => {
            let g = graph(&g)?;
            io::sil_to_json(&g, g.has_sil().as_ref())
        }
        Command::OutFinite { spec } => {
            let gp = product(&spec)?;
            let (finite, witness) = gp.out_finite()?;
            json!({"out_finite": finite, "witness": io::sil_to_json(gp.graph(), witness.as_ref())})
        }
        Command::Decompose { source, target, data } => {
            let (src, tgt) = (product(&source)?, product(&target)?);
            let d = io::conjugating_data_from_json(&src, &tgt, &io::read_document(&data)?)?;
            match src.decompose(&tgt, &d) {
                Ok(r) => io::decomposition_to_json(&src, &tgt, &r),
                Err(Error::NotAnIsomorphism(reason)) => {
                    return Ok(Err(Negative(json!({"isomorphism": false, "reason": reason}))))
                }
                Err(e) => return Err(e),
            }
        }
        Command::FromImages { spec, images } => {
            let gp = product(&spec)?;
            let imgs = io::images_from_json(&gp, &gp, &io::read_document(&images)?)?;
            let r = gp.conjugating_data_from_images(&gp, &imgs)?;
            let out = io::from_images_to_json(&gp, &gp, &r);
            if matches!(r, FromImages::NotConjugating { .. }) {
                return Ok(Err(Negative(out)));
            }
            out
        }
        Command::Rigid { spec } => {
            let gp = product(&spec)?;
            let gens: Vec<GroupElement> =
                gp.graph().vertices().map(|v| GroupElement::new(v, gp.group(v).generators()[0])).collect();
            let (seq, g) = gp.rigid_element(&gens)?;
            let names: Vec<&str> = seq.iter().map(|&v: &Vertex| gp.graph().name(v)).collect();
            json!({
                "sequence": names,
                "element": io::word_to_json(&gp, &g),
                "unique_reduced_word": gp.has_unique_reduced_word(&g),
            })
        }
        Command::FixingLocals { spec, word: w } => {
            let gp = product(&spec)?;
            let g = word(&gp, &w)?;
            let locals = gp.fixing_locals(&g)?;
            let docs: Vec<Value> = locals
                .into_iter()
                .map(|l| io::generator_to_json(&gp, &graphprod::Generator::Local(l)))
                .collect();
            json!({"count": docs.len(), "locals": docs})
        }
        Command::Verify { spec, radius, suite, seed } => {
            let gp = product(&spec)?;
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig { radius, seed, ..VerifyConfig::default() };
            let reports = run_suite(&gp, suite, &cfg)?;
            for r in &reports {
                eprintln!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            let passed = reports.iter().all(|r| r.passed);
            let checks: Vec<Value> =
                reports.iter().map(|r| json!({"name": r.name, "passed": r.passed, "detail": r.detail})).collect();
            let out = json!({"passed": passed, "radius": radius, "seed": seed, "checks": checks});
            if !passed {
                return Ok(Err(Negative(out)));
            }
            out
        }
    };
    Ok(Ok(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Ok(Value::Null)) => ExitCode::SUCCESS,
        Ok(Ok(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Err(Negative(v))) => {
            println!("{v}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
