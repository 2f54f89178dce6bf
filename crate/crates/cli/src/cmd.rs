use anyhow::{anyhow, bail, Context};
use clap::{Args, ValueEnum};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use grigrow::group::{Cyclic, Grig, Group, Integers, Perm3, Sym3, Trivial};
use grigrow::growth::{self, InvertedOrbitConfig};
use grigrow::imbed::{
    commutator_witness_b, commutator_witness_c, phi0_is_homomorphism, two_gen_imbed, ToJson,
};
use grigrow::schreier::{self, ball, designated_position, distance};
use grigrow::seqprop::{check_rectifiable_pair, PointSequence};
use grigrow::wlimit::{
    augment, ball_agreement, choose_schedule, commutator_in_w, commutator_in_w_with, w1_growth_bound, Continuation,
    LazyW, ScheduleConfig, SparseF, WlimitError,
};
use grigrow::wreath::Wreath;
use grigrow::OrbitPoint;

use crate::report::{Csv, Report};
use crate::Common;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    /// `|pos(x_i) - pos(x_j)|` with `pos(x_i) = floor(2^(i+1)/3)`.
    Line,
    /// `|2^i - 2^j|`.
    Power,
}

#[derive(Args, Debug)]
pub struct SchreierArgs {
    /// Largest designated index in the distance table.
    #[arg(long, default_value_t = 8)]
    pub max_i: usize,
    /// Distance law checked against the BFS distances.
    #[arg(long, value_enum, default_value_t = Law::Line)]
    pub law: Law,
    /// Centre `x_k` of the ball drawn by `--format dot` (radius: --max-radius, default 4).
    #[arg(long, default_value_t = 0)]
    pub center: usize,
}

pub fn schreier(c: &Common, a: &SchreierArgs) -> anyhow::Result<Report> {
    if a.max_i > 40 {
        bail!("--max-i above 40 is out of range");
    }
    let mut csv = Csv::new("schreier", &["i", "j", "d", "expected", "holds"]);
    let mut rows = Vec::new();
    let mut failure = None;
    for j in 0..=a.max_i {
        for i in 0..j {
            let (xi, xj) = (OrbitPoint::designated(i), OrbitPoint::designated(j));
            let d = distance(&xi, &xj, schreier::default_r_max(i, j))
                .ok_or_else(|| anyhow!("x_{i} and x_{j} not connected within search radius"))?
                as u64;
            let expected = match a.law {
                Law::Line => designated_position(j) - designated_position(i),
                Law::Power => (1u64 << j) - (1u64 << i),
            };
            let holds = d == expected;
            if !holds && failure.is_none() {
                failure = Some(format!(
                    "d(x_{i}, x_{j}) = {d} by BFS, law {:?} gives {expected} (x_{i} = {xi}, x_{j} = {xj})",
                    a.law
                ));
            }
            csv.row(&[i.to_string(), j.to_string(), d.to_string(), expected.to_string(), holds.to_string()]);
            rows.push(json!({"i": i, "j": j, "d": d, "expected": expected, "holds": holds}));
        }
    }
    let radius = c.max_radius.unwrap_or(4);
    let dot = ball(&OrbitPoint::designated(a.center), radius).to_dot();
    let pairs = rows.len();
    Ok(Report {
        name: "schreier",
        csv: csv.finish(),
        json: json!({
            "schema_version": 1,
            "law": format!("{:?}", a.law).to_lowercase(),
            "max_i": a.max_i,
            "rows": rows,
        }),
        dot: Some(dot),
        summary: format!(
            "schreier: {pairs} pairs up to x_{}, law {:?}: {}",
            a.max_i,
            a.law,
            if failure.is_none() { "holds" } else { "violated" }
        ),
        failure,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupChoice {
    Trivial,
    Z,
    Grig,
    /// `Z wr G` over the orbit of `1^inf`, generated by `delta_{x_0}` and `a, b, c, d`.
    ZWrGrig,
    /// `W_1` over `Z/2`: `f` supported at `x_n` alongside `a, b, c, d`,
    /// checked against the wreath growth bound.
    W1,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[arg(long, value_enum, default_value_t = GroupChoice::Grig)]
    pub group: GroupChoice,
    /// Support point `x_n` of `f` for `--group w1`.
    #[arg(long, default_value_t = 7)]
    pub n: usize,
}

pub fn growth(c: &Common, a: &GrowthArgs) -> anyhow::Result<Report> {
    let r = c.max_radius.unwrap_or(10);
    let table = match a.group {
        GroupChoice::Trivial => growth::enumerate_balls(&Trivial, &Trivial.generators(), r, c.budget),
        GroupChoice::Z => growth::enumerate_balls(&Integers, &Integers.generators(), r, c.budget),
        GroupChoice::Grig => growth::enumerate_balls(&Grig, &Grig.generators(), r, c.budget),
        GroupChoice::ZWrGrig => {
            let w = Wreath::new(Integers, Grig, OrbitPoint::designated(0));
            growth::enumerate_balls(&w, &w.generators(), r, c.budget)
        }
        GroupChoice::W1 => return growth_w1(c, a.n, r),
    };
    let name = a.group.to_possible_value().expect("named").get_name().to_string();
    let last = table.rows.last().expect("radius 0");
    let summary = format!(
        "growth {name}: |B({})| = {}{}",
        last.radius,
        last.ball,
        if table.truncated { " (truncated by budget)" } else { "" }
    );
    Ok(Report {
        name: "growth",
        csv: table.to_csv(),
        json: json!({"schema_version": 1, "group": name, "table": table}),
        dot: None,
        summary,
        failure: None,
    })
}

fn growth_w1(c: &Common, n: usize, r: usize) -> anyhow::Result<Report> {
    let rows = w1_growth_bound(&Cyclic::new(2), &1, n, r, c.budget)?;
    let mut csv = Csv::new("growth-bound", &["radius", "measured", "bound", "holds"]);
    let mut json_rows = Vec::new();
    let mut failure = None;
    for row in &rows {
        let holds = BigRational::from_integer(row.measured.into()) <= row.bound;
        if !holds && failure.is_none() {
            failure = Some(format!(
                "W_1 at x_{n}, radius {}: {} elements exceed the bound {}",
                row.radius, row.measured, row.bound
            ));
        }
        csv.row(&[row.radius.to_string(), row.measured.to_string(), row.bound.to_string(), holds.to_string()]);
        json_rows.push(json!({
            "radius": row.radius, "measured": row.measured,
            "bound": row.bound.to_string(), "holds": holds,
        }));
    }
    let last = rows.last().expect("radius 0");
    Ok(Report {
        name: "growth",
        csv: csv.finish(),
        json: json!({"schema_version": 1, "group": "w1", "n": n, "rows": json_rows}),
        dot: None,
        summary: format!(
            "growth w1 (Z/2 at x_{n}): |B({})| = {}, bound {}",
            last.radius, last.measured, last.bound
        ),
        failure,
    })
}

#[derive(Args, Debug)]
pub struct InvertedOrbitArgs {
    /// Largest word length.
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Base point `x_k`.
    #[arg(long, default_value_t = 0)]
    pub point: usize,
    /// Random words per length for the sampled maximum.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Longest length searched exactly.
    #[arg(long, default_value_t = 14)]
    pub exact_cap: usize,
}

pub fn inverted_orbit(c: &Common, a: &InvertedOrbitArgs) -> anyhow::Result<Report> {
    let x = OrbitPoint::designated(a.point);
    let mut rows = Vec::new();
    for n in 0..=a.max_n {
        let cfg = InvertedOrbitConfig {
            exact: n <= a.exact_cap,
            exact_cap: a.exact_cap,
            samples: a.samples,
            seed: c.seed,
        };
        rows.push(growth::inverted_orbit_growth(n, &x, &cfg)?);
    }
    let mut failure = None;
    let mut prev_exact = 0;
    for r in &rows {
        if let (Some(e), Some(s)) = (r.exact_max, r.sampled_max) {
            if s > e && failure.is_none() {
                failure = Some(format!("n = {}: sampled maximum {s} exceeds exact maximum {e}", r.n));
            }
        }
        if let Some(e) = r.exact_max {
            if e < prev_exact && failure.is_none() {
                failure = Some(format!("n = {}: exact maximum {e} below {prev_exact} at n - 1", r.n));
            }
            prev_exact = e;
        }
    }
    let last = rows.last().expect("n = 0");
    let summary = format!(
        "inverted-orbit at x_{}: n = {} exact {:?}, sampled {:?}",
        a.point, last.n, last.exact_max, last.sampled_max
    );
    Ok(Report {
        name: "inverted-orbit",
        csv: growth::inverted_orbit_csv(&rows),
        json: json!({"schema_version": 1, "point": a.point, "seed": c.seed, "rows": rows}),
        dot: None,
        summary,
        failure,
    })
}

#[derive(Args, Debug)]
pub struct RectifyArgs {
    /// Checks every pair `i != j` with indices up to this bound.
    #[arg(long, default_value_t = 5)]
    pub max_i: usize,
    /// Radius of the direct word search before repair.
    #[arg(long, default_value_t = 64)]
    pub search_radius: usize,
}

pub fn rectify(_c: &Common, a: &RectifyArgs) -> anyhow::Result<Report> {
    let seq = PointSequence::designated(a.max_i + 1);
    let mut csv = Csv::new("rectify", &["i", "j", "length", "word", "tail_level", "exceptions_checked"]);
    let mut reports = Vec::new();
    let mut failure = None;
    for i in 0..=a.max_i {
        for j in 0..=a.max_i {
            if i == j {
                continue;
            }
            match check_rectifiable_pair(&seq, i, j, a.search_radius) {
                Ok(w) => {
                    let r = w.report();
                    csv.row(&[
                        i.to_string(),
                        j.to_string(),
                        w.g.len().to_string(),
                        r.word.clone(),
                        r.tail_level.to_string(),
                        r.exceptions_checked.to_string(),
                    ]);
                    reports.push(serde_json::to_value(&r)?);
                }
                Err(e) => {
                    if failure.is_none() {
                        failure = Some(format!("x_{i} -> x_{j}: {e}"));
                    }
                }
            }
        }
    }
    let found = reports.len();
    Ok(Report {
        name: "rectify",
        csv: csv.finish(),
        json: json!({"schema_version": 1, "max_i": a.max_i, "witnesses": reports}),
        dot: None,
        summary: format!("rectify: {found} certified witnesses for pairs up to x_{}", a.max_i),
        failure,
    })
}

#[derive(Args, Debug)]
pub struct ImbedArgs {
    /// Random pairs for the homomorphism check.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Rationals for the commutator witnesses, comma separated.
    #[arg(long, default_value = "1/2,1/3,2/3,5/6")]
    pub rationals: String,
    /// Integers for the witnesses inside the first factor, comma separated.
    #[arg(long, default_value = "-2,-1,1,2", allow_hyphen_values = true)]
    pub integers: String,
}

fn parse_rationals(s: &str) -> anyhow::Result<Vec<BigRational>> {
    s.split(',')
        .map(|t| t.trim().parse::<BigRational>().with_context(|| format!("bad rational {t:?}")))
        .collect()
}

pub fn imbed(c: &Common, a: &ImbedArgs) -> anyhow::Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut csv = Csv::new("imbed", &["check", "b", "c", "n", "holds"]);
    let mut failure = None;
    let note = |what: String, holds: bool, failure: &mut Option<String>| {
        if !holds && failure.is_none() {
            *failure = Some(what);
        }
    };
    let mut homs = Vec::new();
    for _ in 0..a.samples {
        let mut q = || {
            let num: i64 = rng.gen_range(-60..=60);
            let den: i64 = rng.gen_range(1..=24);
            BigRational::new(num.into(), den.into())
        };
        let (b1, b2) = (q(), q());
        let holds = phi0_is_homomorphism(&b1, &b2);
        note(format!("Phi0({b1}) Phi0({b2}) != Phi0({})", &b1 + &b2), holds, &mut failure);
        csv.row(&["homomorphism".into(), b1.to_string(), b2.to_string(), String::new(), holds.to_string()]);
        homs.push(json!({"b": b1.to_string(), "c": b2.to_string(), "holds": holds}));
    }
    let mut ints = Vec::new();
    for b in parse_rationals(&a.integers)? {
        let w = commutator_witness_c(&b)?;
        note(format!("[u, g] != Phi0({b}) for u = {}, g = {}", w.u, w.g), w.verified, &mut failure);
        csv.row(&["integer".into(), b.to_string(), String::new(), String::new(), w.verified.to_string()]);
        ints.push(json!({
            "b": b.to_string(), "u": w.u.to_json(), "g": w.g.to_json(), "holds": w.verified,
        }));
    }
    let mut rats = Vec::new();
    for b in parse_rationals(&a.rationals)? {
        let w = commutator_witness_b(&b, None)?;
        note(
            format!("[(1, 1/{}), g] Psi_{}({}) != Phi({b}) for g = {}", w.n, w.n, &b * BigRational::from_integer(w.n.into()), w.g),
            w.verified,
            &mut failure,
        );
        csv.row(&["rational".into(), b.to_string(), String::new(), w.n.to_string(), w.verified.to_string()]);
        rats.push(json!({
            "b": b.to_string(), "n": w.n, "g": w.g.to_json(), "holds": w.verified,
        }));
    }
    let summary = format!(
        "imbed: {} homomorphism pairs, {} integer and {} rational witnesses: {}",
        homs.len(),
        ints.len(),
        rats.len(),
        if failure.is_none() { "all exact" } else { "failures" }
    );
    Ok(Report {
        name: "imbed",
        csv: csv.finish(),
        json: json!({
            "schema_version": 1, "seed": c.seed,
            "homomorphism": homs, "integer_witnesses": ints, "rational_witnesses": rats,
        }),
        dot: None,
        summary,
        failure,
    })
}

#[derive(Args, Debug)]
pub struct TwoGenArgs {
    /// Number of random balanced words.
    #[arg(long, default_value_t = 20)]
    pub words: usize,
    /// Letters per word (rounded up to even).
    #[arg(long, default_value_t = 12)]
    pub len: usize,
}

/// A random word followed by a shuffle of its inverse letters.
fn balanced_word(rng: &mut ChaCha8Rng, gens: usize, len: usize) -> Vec<(usize, i64)> {
    let half: Vec<(usize, i64)> = (0..len.div_ceil(2))
        .map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    let mut back: Vec<(usize, i64)> = half.iter().map(|&(i, e)| (i, -e)).collect();
    back.shuffle(rng);
    half.into_iter().chain(back).collect()
}

pub fn two_gen(c: &Common, a: &TwoGenArgs) -> anyhow::Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let gens = [Perm3::T12, Perm3::T23];
    let mut csv = Csv::new("two-gen", &["word", "support", "value_at_t", "expected", "holds"]);
    let mut reports = Vec::new();
    let mut failure = None;
    for _ in 0..a.words {
        let word = balanced_word(&mut rng, gens.len(), a.len);
        let r = two_gen_imbed(&Sym3, &gens, &word)?;
        if !r.ok && failure.is_none() {
            failure = Some(format!(
                "word {}: support {:?}, value {} at t, expected {}",
                r.word, r.support, r.value_at_t, r.expected
            ));
        }
        let support = r.support.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        csv.row(&[r.word.clone(), support, r.value_at_t.clone(), r.expected.clone(), r.ok.to_string()]);
        reports.push(serde_json::to_value(&r)?);
    }
    Ok(Report {
        name: "two-gen",
        csv: csv.finish(),
        json: json!({"schema_version": 1, "seed": c.seed, "base": "sym3", "words": reports}),
        dot: None,
        summary: format!(
            "two-gen: {} balanced words over Sym(3): {}",
            a.words,
            if failure.is_none() { "all supported at t" } else { "failures" }
        ),
        failure,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseChoice {
    /// `Z/2`, every value the generator.
    Z2,
    /// `Sym(3)`, values cycling through (1 2), (2 3), (1 3).
    Sym3,
}

#[derive(Args, Debug)]
pub struct WlimitArgs {
    #[arg(long, value_enum, default_value_t = BaseChoice::Z2)]
    pub base: BaseChoice,
    /// Number of radii `m(i)` to choose.
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    /// Growth rates `epsilon_i > 1`, comma separated; the last is repeated.
    #[arg(long, default_value = "31/10,3")]
    pub epsilon: String,
    /// Largest position tried for `n(i)`.
    #[arg(long, default_value_t = 16)]
    pub max_n: usize,
    /// Direct word search radius for rectifying transports.
    #[arg(long, default_value_t = 1024)]
    pub search_radius: usize,
    /// Skip the commutator checks.
    #[arg(long)]
    pub no_commutators: bool,
}

pub fn wlimit(c: &Common, a: &WlimitArgs) -> anyhow::Result<Report> {
    if a.levels == 0 {
        bail!("--levels must be positive");
    }
    let k = a.levels + 1;
    match a.base {
        BaseChoice::Z2 => wlimit_run(c, a, "z2", &Cyclic::new(2), &vec![1; k]),
        BaseChoice::Sym3 => {
            let cycle = [Perm3::T12, Perm3::T23, Perm3::T13];
            let vals: Vec<Perm3> = (0..k).map(|i| cycle[i % 3]).collect();
            wlimit_run(c, a, "sym3", &Sym3, &vals)
        }
    }
}

fn wlimit_run<B: Group + Clone>(
    c: &Common,
    a: &WlimitArgs,
    base_name: &str,
    base: &B,
    raw: &[B::Elem],
) -> anyhow::Result<Report> {
    let (aug, vals) = augment(base, raw)?;
    let mut epsilon = parse_rationals(&a.epsilon)?;
    while epsilon.len() < a.levels {
        epsilon.push(epsilon.last().expect("nonempty").clone());
    }
    let cfg = ScheduleConfig {
        i_max: a.levels,
        epsilon,
        budget: c.budget,
        max_radius: c.max_radius.unwrap_or(10),
        max_n: a.max_n,
    };
    let mut csv = Csv::new("wlimit", &["check", "i", "j", "radius", "holds", "detail"]);
    let sched = match choose_schedule(&aug, &vals, &cfg) {
        Ok(s) => s,
        Err(WlimitError::Budget { stage, partial }) => {
            let partial = partial.map(|p| p.to_json()).unwrap_or(Value::Null);
            csv.row(&["schedule".into(), String::new(), String::new(), String::new(), "false".into(), stage.clone()]);
            return Ok(Report {
                name: "wlimit",
                csv: csv.finish(),
                json: json!({"schema_version": 1, "base": base_name, "partial_schedule": partial}),
                dot: None,
                summary: format!("wlimit {base_name}: schedule incomplete"),
                failure: Some(format!("schedule: budget exhausted while {stage}")),
            });
        }
        Err(e) => return Err(e.into()),
    };
    for cert in &sched.certificates {
        csv.row(&[
            "schedule".into(),
            cert.i.to_string(),
            String::new(),
            cert.m.to_string(),
            "true".into(),
            format!("n = {}, v = {} <= {}", cert.n, cert.ball, cert.bound),
        ]);
    }
    let mut failure = None;

    let mut agreement = Vec::new();
    for i in 1..=a.levels {
        let radius = sched.m[i - 1].min(cfg.max_radius);
        let r = ball_agreement(&aug, &vals, &sched.n, i, radius, c.budget)?;
        if !r.agrees && failure.is_none() {
            failure = Some(format!(
                "W_{i} and W_{} differ within radius {radius} (first mismatch at radius {:?}, sizes {:?})",
                i + 1,
                r.first_mismatch,
                r.sizes
            ));
        }
        let last = r.sizes.last().copied().unwrap_or_default();
        csv.row(&[
            "agreement".into(),
            i.to_string(),
            (i + 1).to_string(),
            radius.to_string(),
            r.agrees.to_string(),
            format!("ball {}", last[0]),
        ]);
        agreement.push(json!({
            "i": i, "radius": radius, "agrees": r.agrees,
            "first_mismatch": r.first_mismatch, "sizes": r.sizes,
        }));
    }

    // Each pair is decided exactly in W_k, where every value of f is known,
    // and then in the limit, where values past the schedule are unknown.
    let mut commutators = Vec::new();
    let mut uncertified = 0;
    if !a.no_commutators {
        let k = sched.n.len();
        let exact = LazyW::new(SparseF::new(aug.clone(), &sched.n, &vals, None)?);
        let cont = Continuation {
            min_next: sched.n.last().copied().expect("n nonempty") + 1,
            order: aug.1.n,
        };
        let limit = LazyW::new(SparseF::new(aug.clone(), &sched.n, &vals, Some(cont))?);
        for i in 0..k {
            for j in 0..k {
                let chk = commutator_in_w(&exact, i, j, a.search_radius)?;
                if !chk.holds && failure.is_none() {
                    failure = Some(format!(
                        "[f^g_i, f^g_j] != iota({}) in W_{k} for i = {i}, j = {j}, g_i = {}, g_j = {}",
                        chk.expected, chk.gi, chk.gj
                    ));
                }
                let (in_limit, reason) = match commutator_in_w_with(&limit, i, j, &chk.gi, &chk.gj) {
                    Ok(c) => (Some(c.holds), None),
                    Err(WlimitError::Uncertified(r)) => (None, Some(r)),
                    Err(e) => return Err(e.into()),
                };
                if in_limit == Some(false) && failure.is_none() {
                    failure = Some(format!(
                        "[f^g_i, f^g_j] != iota({}) in the limit for i = {i}, j = {j}",
                        chk.expected
                    ));
                }
                uncertified += usize::from(in_limit.is_none());
                let limit_text = match in_limit {
                    Some(h) => h.to_string(),
                    None => "uncertified".into(),
                };
                csv.row(&[
                    "commutator".into(),
                    i.to_string(),
                    j.to_string(),
                    String::new(),
                    chk.holds.to_string(),
                    format!("iota({}); limit: {limit_text}", chk.expected),
                ]);
                commutators.push(json!({
                    "i": i, "j": j, "n_i": sched.n[i], "n_j": sched.n[j],
                    "g_i": chk.gi.to_string(), "g_j": chk.gj.to_string(),
                    "expected": chk.expected, "holds": chk.holds,
                    "holds_in_limit": in_limit, "uncertified_reason": reason,
                }));
            }
        }
    }
    let summary = format!(
        "wlimit {base_name}: m = {:?}, n = {:?}; {} agreement and {} commutator checks ({uncertified} uncertified in the limit): {}",
        sched.m,
        sched.n,
        agreement.len(),
        commutators.len(),
        if failure.is_none() { "all hold" } else { "failures" }
    );
    Ok(Report {
        name: "wlimit",
        csv: csv.finish(),
        json: json!({
            "schema_version": 1,
            "base": base_name,
            "schedule": sched.to_json(),
            "agreement": agreement,
            "commutators": commutators,
        }),
        dot: None,
        summary,
        failure,
    })
}
