//! Subcommand implementations. Each returns a JSON report or a failure with
//! its exit code.

use serde_json::{json, Map, Value};

use coopgap::approximations::{core_bounds, exact_bounds, Concept, SolutionBounds};
use coopgap::extensions::{
    enumerate_monotone_vertices, enumerate_positive_vertices, extendable, superadditive_witness, v0_v1,
    ExtensionSampler,
};
use coopgap::incomplete::{
    bk2018_feasible, is_convex_pc, is_monotone_pc, is_positive_pc, is_superadditive_pc,
};
use coopgap::polyhedra::{
    build_extension_polytope, contains, embed_reduced, extreme_ray_enumeration, game_from_coordinates,
    lp_feasible, reduce_recession_cone, remove_redundant, table1_row, vertex_enumeration, HPolyhedron,
    Table1Row,
};
use coopgap::rational::format;
use coopgap::solutions::{core_hrep, Interval};
use coopgap::{Coalition, Error, GameClass, PlayerCentered, TUGame};

use crate::file::GameFile;

/// Largest player count `table1` runs without `--allow-long`.
pub const TABLE1_SHORT_MAX: usize = 4;

/// A failed command: message and process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotExtendable(_) | Error::NotConvex => 3,
            Error::NotPointed(_) | Error::NotHomogeneous | Error::NotInPolyhedron => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// What `extensions` lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Vertices,
    Rays,
    Witness,
}

/// Solution concept accepted by `approx` and `oracle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConceptArg {
    Core,
    Shapley,
    Tau,
}

fn game_value(game: &TUGame) -> Value {
    serde_json::to_value(GameFile::from_game(game)).expect("game files serialize")
}

fn interval_value(i: &Interval) -> Value {
    json!([format(&i.lo), format(&i.hi)])
}

fn hrep_value(p: &HPolyhedron) -> Outcome<Value> {
    let rows = |cs: &[coopgap::polyhedra::Constraint]| -> Vec<Value> {
        cs.iter()
            .map(|c| {
                json!({
                    "coeffs": c.coeffs.iter().map(format).collect::<Vec<_>>(),
                    "rhs": format(&c.rhs),
                })
            })
            .collect()
    };
    let p = p.deduplicated();
    let vertices: Vec<Vec<String>> = vertex_enumeration(&p)?
        .vertices
        .iter()
        .map(|v| v.iter().map(format).collect())
        .collect();
    Ok(json!({
        "dim": p.dim(),
        "equalities": rows(p.equalities()),
        "inequalities": rows(p.inequalities()),
        "vertices": vertices,
    }))
}

fn require_extendable(g: &PlayerCentered, cls: GameClass) -> Outcome<()> {
    if extendable(g, cls) {
        Ok(())
    } else {
        Err(Error::NotExtendable(cls).into())
    }
}

/// Class predicates and extendability verdicts.
pub fn check(file: &GameFile) -> Outcome<Value> {
    let base = file.incomplete()?;
    let mut report = Map::new();
    report.insert("n".into(), json!(file.n));
    report.insert("center".into(), json!(file.center));
    report.insert(
        "known".into(),
        json!(base.known_values().filter(|(s, _)| !s.is_empty()).count()),
    );
    if file.center.is_some() {
        let g = file.player_centered()?;
        report.insert(
            "predicates".into(),
            json!({
                "positive": is_positive_pc(&g),
                "convex": is_convex_pc(&g),
                "monotone": is_monotone_pc(&g),
                "superadditive": is_superadditive_pc(&g),
            }),
        );
        let verdicts: Map<String, Value> = GameClass::ALL
            .iter()
            .map(|&cls| (cls.name().to_string(), json!(extendable(&g, cls))))
            .collect();
        report.insert("extendable".into(), Value::Object(verdicts));
    }
    report.insert("convex_extendable_lp".into(), json!(bk2018_feasible(&base)));
    if Coalition::all_nonempty(file.n).all(|s| base.is_known(s)) {
        let game = TUGame::from_fn(file.n, |s| base.value(s).expect("complete").clone())?;
        let classes: Map<String, Value> = GameClass::ALL
            .iter()
            .map(|&cls| (cls.name().to_string(), json!(cls.contains(&game))))
            .collect();
        report.insert("classes".into(), Value::Object(classes));
    }
    Ok(Value::Object(report))
}

fn polytope_vertices(g: &PlayerCentered, cls: GameClass) -> Outcome<Vec<TUGame>> {
    let vr = vertex_enumeration(&build_extension_polytope(g, cls))?;
    Ok(vr
        .vertices
        .iter()
        .map(|x| game_from_coordinates(g.n(), x))
        .collect::<coopgap::Result<_>>()?)
}

fn recession_rays(g: &PlayerCentered, cls: GameClass) -> Outcome<Vec<TUGame>> {
    let (n, center) = (g.n(), g.center());
    match cls {
        GameClass::Convex | GameClass::Superadditive => {
            let cone = remove_redundant(&reduce_recession_cone(n, center, cls)?);
            Ok(extreme_ray_enumeration(&cone)?
                .iter()
                .map(|r| embed_reduced(n, center, r))
                .collect::<coopgap::Result<_>>()?)
        }
        _ => {
            let cone = build_extension_polytope(g, cls).recession_cone();
            Ok(extreme_ray_enumeration(&cone)?
                .iter()
                .map(|r| game_from_coordinates(n, r))
                .collect::<coopgap::Result<_>>()?)
        }
    }
}

fn witness(g: &PlayerCentered, cls: GameClass) -> Outcome<TUGame> {
    if cls == GameClass::Superadditive {
        return Ok(superadditive_witness(g));
    }
    let (_, v1) = v0_v1(g);
    if cls.contains(&v1) {
        return Ok(v1);
    }
    let point = lp_feasible(&build_extension_polytope(g, cls)).ok_or(Error::NotExtendable(cls))?;
    Ok(game_from_coordinates(g.n(), &point)?)
}

/// Vertices, recession rays or one witness of the extension set.
pub fn extensions(file: &GameFile, cls: GameClass, what: What) -> Outcome<Value> {
    let g = file.player_centered()?;
    require_extendable(&g, cls)?;
    let games = match what {
        What::Vertices => match cls {
            GameClass::Positive => enumerate_positive_vertices(&g)?,
            GameClass::Monotone => enumerate_monotone_vertices(&g)?,
            _ => polytope_vertices(&g, cls)?,
        },
        What::Rays => recession_rays(&g, cls)?,
        What::Witness => vec![witness(&g, cls)?],
    };
    let what_name = match what {
        What::Vertices => "vertices",
        What::Rays => "rays",
        What::Witness => "witness",
    };
    Ok(json!({
        "class": cls.name(),
        "what": what_name,
        "count": games.len(),
        "games": games.iter().map(game_value).collect::<Vec<_>>(),
    }))
}

fn concept_of(c: ConceptArg) -> Option<Concept> {
    match c {
        ConceptArg::Core => None,
        ConceptArg::Shapley => Some(Concept::Shapley),
        ConceptArg::Tau => Some(Concept::Tau),
    }
}

/// Default class for a concept when `--class` is absent.
pub fn default_class(c: ConceptArg) -> GameClass {
    match c {
        ConceptArg::Tau => GameClass::ZeroNormalizedPositive,
        _ => GameClass::Positive,
    }
}

fn bounds_value(b: &SolutionBounds) -> Value {
    let players: Vec<Value> = b
        .per_player
        .iter()
        .zip(&b.witnesses)
        .enumerate()
        .map(|(k, (i, w))| {
            json!({
                "player": k,
                "interval": interval_value(i),
                "lo_witness": game_value(&w.lo),
                "hi_witness": game_value(&w.hi),
            })
        })
        .collect();
    json!({
        "concept": b.concept.name(),
        "class": b.cls.name(),
        "players": players,
    })
}

/// Closed-form weak (and for the core, strong) bounds.
pub fn approx(file: &GameFile, concept: ConceptArg, cls: GameClass) -> Outcome<Value> {
    let g = file.player_centered()?;
    match concept_of(concept) {
        None => {
            let b = core_bounds(&g, cls)?;
            let inner = match &b.inner {
                Some(p) => hrep_value(p)?,
                None => Value::Null,
            };
            Ok(json!({
                "concept": "core",
                "class": cls.name(),
                "inner": inner,
                "outer": hrep_value(&b.outer)?,
            }))
        }
        Some(c) => Ok(bounds_value(&exact_bounds(&g, cls, c)?)),
    }
}

/// One column of the extreme-ray count table for each `n = 1..=n_max`.
pub fn table1(n_max: usize, allow_long: bool) -> Outcome<Vec<Table1Row>> {
    if n_max == 0 {
        return Err(Failure::validation("--n-max must be at least 1"));
    }
    if n_max > TABLE1_SHORT_MAX && !allow_long {
        return Err(Failure::validation(format!(
            "--n-max above {TABLE1_SHORT_MAX} takes a long time; pass --allow-long to run it"
        )));
    }
    Ok((1..=n_max).map(table1_row).collect::<coopgap::Result<_>>()?)
}

pub fn table1_text(rows: &[Table1Row]) -> String {
    type Line = (&'static str, fn(&Table1Row) -> usize);
    let lines: [Line; 5] = [
        ("n", |r| r.n),
        ("rays(S^n)", |r| r.superadditive_rays),
        ("rays(C^n)", |r| r.convex_rays),
        ("(N,-u_k)", |r| r.neg_unanimity),
        ("(N,e_S0)", |r| r.e_s0),
    ];
    let width = rows
        .iter()
        .map(|r| r.superadditive_rays.to_string().len())
        .max()
        .unwrap_or(1)
        .max(2);
    let mut out = String::new();
    for (label, get) in lines {
        out.push_str(&format!("{label:<10}"));
        for r in rows {
            out.push_str(&format!(" {:>width$}", get(r)));
        }
        out.push('\n');
    }
    out
}

pub fn table1_value(rows: &[Table1Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "superadditive_rays": r.superadditive_rays,
                    "convex_rays": r.convex_rays,
                    "neg_unanimity": r.neg_unanimity,
                    "e_s0": r.e_s0,
                })
            })
            .collect(),
    )
}

/// Oracle report; `passed` decides the exit code.
pub struct OracleReport {
    pub value: Value,
    pub passed: bool,
}

/// Samples extensions and checks them against the closed forms.
///
/// `corrupt` replaces player 0's exact interval by a point just above it,
/// so that the check must fail.
pub fn oracle(
    file: &GameFile,
    concept: ConceptArg,
    cls: GameClass,
    samples: usize,
    seed: u64,
    corrupt: bool,
) -> Outcome<OracleReport> {
    let g = file.player_centered()?;
    if samples == 0 {
        return Err(Failure::validation("--samples must be at least 1"));
    }
    let Some(c) = concept_of(concept) else {
        if corrupt {
            return Err(Failure::validation(
                "--corrupt-interval applies to shapley and tau only",
            ));
        }
        return core_oracle(&g, cls, samples, seed);
    };
    let mut exact = exact_bounds(&g, cls, c)?;
    if corrupt {
        let bumped = &exact.per_player[0].hi + coopgap::rational::int(1);
        exact.per_player[0] = Interval::point(bumped);
    }
    let empirical = coopgap::approximations::empirical_bounds(&g, cls, c, samples, seed)?;
    let mut passed = true;
    let mut players = Vec::new();
    for (k, (x, e)) in exact.per_player.iter().zip(&empirical.per_player).enumerate() {
        let inside = e.is_subset_of(x);
        let w = &exact.witnesses[k];
        let attained = [(&w.lo, &x.lo), (&w.hi, &x.hi)].iter().all(|(game, end)| {
            g.is_extended_by(game)
                && cls.contains(game)
                && c.evaluate(game).map(|v| v[k] == **end).unwrap_or(false)
        });
        passed &= inside && attained;
        players.push(json!({
            "player": k,
            "exact": interval_value(x),
            "empirical": interval_value(e),
            "inside": inside,
            "endpoints_attained": attained,
        }));
    }
    Ok(OracleReport {
        value: json!({
            "concept": c.name(),
            "class": cls.name(),
            "samples": samples,
            "seed": seed,
            "players": players,
            "result": if passed { "PASS" } else { "FAIL" },
        }),
        passed,
    })
}

fn core_oracle(g: &PlayerCentered, cls: GameClass, samples: usize, seed: u64) -> Outcome<OracleReport> {
    let b = core_bounds(g, cls)?;
    let sampler = ExtensionSampler::new(g, cls)?;
    let mut inner_ok = 0usize;
    let mut outer_ok = 0usize;
    for index in 0..samples {
        let core = core_hrep(&sampler.sample(seed, index as u64));
        if b.inner.as_ref().is_none_or(|inner| contains(&core, inner)) {
            inner_ok += 1;
        }
        if contains(&b.outer, &core) {
            outer_ok += 1;
        }
    }
    let passed = inner_ok == samples && outer_ok == samples;
    Ok(OracleReport {
        value: json!({
            "concept": "core",
            "class": cls.name(),
            "samples": samples,
            "seed": seed,
            "inner_known": b.inner.is_some(),
            "contain_inner": inner_ok,
            "inside_outer": outer_ok,
            "result": if passed { "PASS" } else { "FAIL" },
        }),
        passed,
    })
}
