//! Command-line surface: documents in, reports out.
//!
//! Exit status is 0 when every law asserted by the command holds, 1 when one
//! fails, and 2 on input or guard errors.

pub mod document;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use document::{Document, StructureDocument, TransformDocument, Transforms};
pub use report::{aggregate, digest, Report};

use crate::duality::{
    aut, brute_force_invariant_quantifiers, brute_force_invariant_relations, check_kras_definability,
    check_kras_group_roundtrip, inv, mcgee_invariants,
};
use crate::error::{Error, Result};
use crate::groups::{generate, k_closure, set_closure, PermutationSet};
use crate::limits::Limits;
use crate::logic::{accepted_object, is_definable, with_similarity_symbol, Counterexample, Verdict};
use crate::model::{
    enumerate_quantifiers, enumerate_relations, fixes, preserves, Object, QuantifierType, Structure,
};
use crate::report::LawOutcome;
use crate::sample::Sampler;
use crate::similarity::{
    check_allisgood_set, check_allisgood_structure, check_bijective, check_cor_set, check_cor_structure,
    check_propaut, check_respect, full_monoid_closure, inv_sim, invariant_under, quantifier_sim_invariant,
    quotient_structure, restrict_quantifier, sim, sim_equiv, sim_equiv_report, Similarity, SimilaritySet,
};

/// Largest element list written into a report's output.
const MAX_LISTED: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "galdual", version, about = "Invariance and definability on finite domains")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized instance sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Automorphism group of a structure.
    Aut { structure: PathBuf },
    /// Relations and quantifiers invariant under a transformation set.
    Inv {
        transform: PathBuf,
        /// Largest relation arity to count.
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Quantifier type such as `1` or `1,2`; repeatable.
        #[arg(long, value_parser = parse_qtype)]
        qtype: Vec<QuantifierType>,
    },
    /// Closure of a transformation set.
    Closure {
        transform: PathBuf,
        /// `group`, `k=K`, `sets=M` or `full-monoid`.
        #[arg(long, default_value = "group", value_parser = parse_mode)]
        mode: ClosureMode,
    },
    /// Whether a relation or quantifier is definable over a structure.
    Define {
        structure: PathBuf,
        /// A structure document holding exactly one relation or quantifier.
        target: PathBuf,
        #[arg(long)]
        no_equality: bool,
    },
    /// Similarities of a structure and its equivalence `∼`.
    Sim { structure: PathBuf },
    /// Quotient of a structure by `∼`.
    Quotient { structure: PathBuf },
    /// Verify a law on a given instance or on seeded random instances.
    Check {
        /// Structure or transform document; seeded instances when omitted.
        input: Option<PathBuf>,
        #[arg(long)]
        law: Law,
        /// Domain size of sampled instances.
        #[arg(long)]
        n: Option<usize>,
        /// Quantifier types for `mcgee`; repeatable.
        #[arg(long, value_parser = parse_qtype)]
        qtype: Vec<QuantifierType>,
        /// Relation arities for `mcgee`; repeatable.
        #[arg(long)]
        arity: Vec<usize>,
        /// Number of sampled instances.
        #[arg(long)]
        count: Option<usize>,
        /// Arity bound for `kras-group`; defaults to the degree.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    Group,
    K(usize),
    Sets(usize),
    FullMonoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    KrasGroup,
    KrasDef,
    Mcgee,
    Cor,
    Respect,
    Allisgood,
    Propaut,
    Bijective,
}

impl std::str::FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Law as ValueEnum>::from_str(s, false).map_err(|_| Error::Invalid(format!("unknown law `{s}`")))
    }
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::KrasGroup => "kras-group",
            Law::KrasDef => "kras-def",
            Law::Mcgee => "mcgee",
            Law::Cor => "cor",
            Law::Respect => "respect",
            Law::Allisgood => "allisgood",
            Law::Propaut => "propaut",
            Law::Bijective => "bijective",
        }
    }
}

pub fn parse_qtype(text: &str) -> std::result::Result<QuantifierType, String> {
    let slots = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("bad slot `{s}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    QuantifierType::new(slots).map_err(|e| e.to_string())
}

fn parse_mode(text: &str) -> std::result::Result<ClosureMode, String> {
    let number = |s: &str| s.parse::<usize>().map_err(|e| format!("bad number `{s}`: {e}"));
    match text {
        "group" => Ok(ClosureMode::Group),
        "full-monoid" => Ok(ClosureMode::FullMonoid),
        _ => {
            if let Some(k) = text.strip_prefix("k=") {
                Ok(ClosureMode::K(number(k)?))
            } else if let Some(m) = text.strip_prefix("sets=") {
                Ok(ClosureMode::Sets(number(m)?))
            } else {
                Err(format!("unknown mode `{text}`; expected group, k=K, sets=M or full-monoid"))
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<(Structure, String)> {
    let doc = StructureDocument::parse(&read(path)?)?;
    let s = doc.to_structure()?;
    Ok((s, doc.to_canonical_json()?))
}

fn load_transforms(path: &Path) -> Result<(Transforms, String)> {
    let doc = TransformDocument::parse(&read(path)?)?;
    let t = doc.to_transforms()?;
    Ok((t, doc.to_canonical_json()?))
}

fn group_of(t: &Transforms) -> Result<PermutationSet> {
    PermutationSet::new(t.size, t.permutations.iter().cloned())
}

/// Permutations read as their graphs together with the similarities.
fn similarity_set_of(t: &Transforms) -> Result<SimilaritySet> {
    let graphs = t
        .permutations
        .iter()
        .map(Similarity::from_permutation)
        .collect::<Result<Vec<_>>>()?;
    SimilaritySet::new(t.size, graphs.into_iter().chain(t.similarities.iter().cloned()))
}

fn blocks(e: &crate::model::EquivalencePartition) -> serde_json::Value {
    json!(e.blocks())
}

fn shown(g: &PermutationSet) -> String {
    if g.len() <= 64 {
        g.to_string()
    } else {
        format!("{} elements, listed in output", g.len())
    }
}

fn list_permutations(g: &PermutationSet) -> Option<serde_json::Value> {
    (g.len() <= MAX_LISTED).then(|| json!(g.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>()))
}

fn list_similarities(p: &SimilaritySet) -> Option<serde_json::Value> {
    (p.len() <= MAX_LISTED).then(|| json!(p.iter().map(|x| x.pairs()).collect::<Vec<_>>()))
}

/// Runs a parsed command line and returns its report.
pub fn execute(cli: &Cli, limits: &Limits) -> Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Aut { structure } => cmd_aut(structure, limits)?,
        Command::Inv {
            transform,
            arity,
            qtype,
        } => cmd_inv(transform, *arity, qtype, limits)?,
        Command::Closure { transform, mode } => cmd_closure(transform, *mode, limits)?,
        Command::Define {
            structure,
            target,
            no_equality,
        } => cmd_define(structure, target, !no_equality, limits)?,
        Command::Sim { structure } => cmd_sim(structure, limits)?,
        Command::Quotient { structure } => cmd_quotient(structure, limits)?,
        Command::Check {
            input,
            law,
            n,
            qtype,
            arity,
            count,
            k,
        } => {
            let opts = CheckOptions {
                law: *law,
                n: *n,
                qtypes: qtype.clone(),
                arities: arity.clone(),
                count: *count,
                k: *k,
                seed: cli.seed,
            };
            cmd_check(input.as_deref(), &opts, limits)?
        }
    };
    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

/// Parses `args`, runs the command, prints the report and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, &Limits::default()) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            2
        }
    }
}

fn cmd_aut(path: &Path, limits: &Limits) -> Result<Report> {
    let (s, canonical) = load_structure(path)?;
    let g = aut(&s, limits)?;
    let outcome = LawOutcome::new("aut", true)
        .detail("domain_size", s.size())
        .detail("order", g.len())
        .detail("elements", shown(&g));
    let mut r = Report::from_outcome(outcome, &format!("aut\n{canonical}"));
    if let Some(list) = list_permutations(&g) {
        r = r.with_output(json!({ "elements": list }));
    }
    Ok(r)
}

fn cmd_inv(path: &Path, arity: usize, qtypes: &[QuantifierType], limits: &Limits) -> Result<Report> {
    let (t, canonical) = load_transforms(path)?;
    let instance = format!("inv arity={arity} qtypes={qtypes:?}\n{canonical}");
    let mut outcome = LawOutcome::new("inv", true).detail("domain_size", t.size);
    let mut output = serde_json::Map::new();
    if t.similarities.is_empty() {
        let h = generate(&group_of(&t)?, limits)?;
        let family = inv(&h, arity, qtypes, limits)?;
        outcome = outcome.detail("group_order", h.len());
        for k in 1..=arity {
            let orbits = family.relation_orbits(k).expect("arity within bound");
            outcome = outcome
                .detail(format!("arity {k} orbits"), orbits.num_orbits())
                .detail(format!("arity {k} invariant relations"), family.relation_count(k)?);
            let listed: Vec<Vec<Vec<usize>>> = orbits.relations().iter().map(|r| r.tuples().collect()).collect();
            output.insert(format!("arity {k} orbits"), json!(listed));
        }
        for qt in qtypes {
            let orbits = family.quantifier_orbits(qt).expect("type requested");
            outcome = outcome
                .detail(format!("type {qt} member orbits"), orbits.num_orbits())
                .detail(format!("type {qt} invariant quantifiers"), family.quantifier_count(qt)?);
        }
    } else {
        let p = similarity_set_of(&t)?;
        let family = inv_sim(&p, arity, qtypes, limits)?;
        outcome = outcome
            .detail("approx", format!("{:?}", family.approx().blocks()))
            .detail("block_group_order", family.block_group().len());
        output.insert("approx".into(), blocks(family.approx()));
        for k in 1..=arity {
            outcome = outcome.detail(format!("arity {k} invariant relations"), family.relation_count(k)?);
        }
        for qt in qtypes {
            outcome = outcome.detail(
                format!("type {qt} invariant restricted quantifiers"),
                family.quotient_family().quantifier_count(qt)?,
            );
        }
    }
    Ok(Report::from_outcome(outcome, &instance).with_output(output.into()))
}

fn cmd_closure(path: &Path, mode: ClosureMode, limits: &Limits) -> Result<Report> {
    let (t, canonical) = load_transforms(path)?;
    let instance = format!("closure {mode:?}\n{canonical}");
    let (outcome, output) = match mode {
        ClosureMode::FullMonoid => {
            let p = similarity_set_of(&t)?;
            let closed = full_monoid_closure(&p, limits)?;
            let flags = closed.flags(limits)?;
            let outcome = LawOutcome::new("closure", flags.is_full())
                .detail("mode", "full-monoid")
                .detail("size", closed.len())
                .detail("flags", flags);
            (outcome, list_similarities(&closed))
        }
        _ => {
            if !t.similarities.is_empty() {
                return Err(Error::Precondition(
                    "group closures take permutations only; use --mode full-monoid for similarities".into(),
                ));
            }
            let h = group_of(&t)?;
            let (name, closed) = match mode {
                ClosureMode::Group => ("group".to_string(), generate(&h, limits)?),
                ClosureMode::K(k) => (format!("k={k}"), k_closure(&h, k, limits)?),
                ClosureMode::Sets(m) => (format!("sets={m}"), set_closure(&h, m, limits)?),
                ClosureMode::FullMonoid => unreachable!(),
            };
            let outcome = LawOutcome::new("closure", true)
                .detail("mode", name)
                .detail("order", closed.len())
                .detail("elements", shown(&closed));
            (outcome, list_permutations(&closed))
        }
    };
    let mut r = Report::from_outcome(outcome, &instance);
    if let Some(list) = output {
        r = r.with_output(json!({ "elements": list }));
    }
    Ok(r)
}

fn single_object(s: &Structure) -> Result<Object> {
    let mut objects: Vec<Object> = s
        .relations()
        .map(|(_, r)| r.clone().into())
        .chain(s.quantifiers().map(|(_, q)| q.clone().into()))
        .collect();
    if objects.len() != 1 {
        return Err(Error::Precondition(format!(
            "target document must hold exactly one relation or quantifier, found {}",
            objects.len()
        )));
    }
    Ok(objects.remove(0))
}

/// Re-checks a verdict: the witness must define the expected object, the
/// counterexample must preserve `s` and move the target.
fn confirm_verdict(s: &Structure, target: &Object, verdict: &Verdict, with_equality: bool, limits: &Limits) -> Result<bool> {
    match verdict {
        Verdict::Definable { witness } => {
            if with_equality {
                return Ok(&accepted_object(s, witness, target, limits)? == target);
            }
            let e = sim_equiv(s, limits)?;
            let eval = with_similarity_symbol(s, &e)?;
            let expected: Object = match target {
                Object::Relation(_) => target.clone(),
                Object::Quantifier(q) => restrict_quantifier(s, q, limits)?.into(),
            };
            Ok(accepted_object(&eval, witness, target, limits)? == expected)
        }
        Verdict::NotDefinable {
            counterexample: Counterexample::Permutation(g),
        } => Ok(preserves(g, s)? && !fixes(g, target)?),
        Verdict::NotDefinable {
            counterexample: Counterexample::Similarity(p),
        } => {
            let e = sim_equiv(s, limits)?;
            for (_, r) in s.relations() {
                if !invariant_under(p, r)? {
                    return Ok(false);
                }
            }
            for (_, q) in s.quantifiers() {
                if !quantifier_sim_invariant(p, q, &e, limits)? {
                    return Ok(false);
                }
            }
            Ok(match target {
                Object::Relation(r) => !invariant_under(p, r)?,
                Object::Quantifier(q) => !quantifier_sim_invariant(p, q, &e, limits)?,
            })
        }
    }
}

fn cmd_define(structure: &Path, target: &Path, with_equality: bool, limits: &Limits) -> Result<Report> {
    let (s, canonical) = load_structure(structure)?;
    let (t, target_canonical) = load_structure(target)?;
    let target = single_object(&t)?;
    if target.size() != s.size() {
        return Err(Error::DomainMismatch {
            expected: s.size(),
            found: target.size(),
        });
    }
    let verdict = is_definable(&s, &target, with_equality, limits)?;
    let confirmed = confirm_verdict(&s, &target, &verdict, with_equality, limits)?;
    let mut outcome = LawOutcome::new("define", confirmed)
        .detail("equality", with_equality)
        .detail("definable", verdict.is_definable())
        .detail("verdict_confirmed", confirmed);
    if let Some(w) = verdict.witness() {
        outcome = outcome.witness(w);
    }
    if let Some(c) = verdict.counterexample() {
        outcome = outcome.counterexample(c);
    }
    let instance = format!("define equality={with_equality}\n{canonical}\n{target_canonical}");
    Ok(Report::from_outcome(outcome, &instance))
}

fn cmd_sim(path: &Path, limits: &Limits) -> Result<Report> {
    let (s, canonical) = load_structure(path)?;
    let equiv = sim_equiv_report(&s, limits)?;
    let sims = sim(&s, limits)?;
    let flags = sims.flags(limits)?;
    let outcome = LawOutcome::new("sim", flags.is_full())
        .detail("sim_equiv", format!("{:?}", equiv.partition.blocks()))
        .detail("arity_bound", equiv.arity_bound)
        .detail("bound_stable", equiv.stable)
        .detail("size", sims.len())
        .detail("flags", flags);
    let mut output = serde_json::Map::new();
    output.insert("sim_equiv".into(), blocks(&equiv.partition));
    if let Some(list) = list_similarities(&sims) {
        output.insert("similarities".into(), list);
    }
    Ok(Report::from_outcome(outcome, &format!("sim\n{canonical}")).with_output(output.into()))
}

fn cmd_quotient(path: &Path, limits: &Limits) -> Result<Report> {
    let (s, canonical) = load_structure(path)?;
    let e = sim_equiv(&s, limits)?;
    let q = quotient_structure(&s, &e)?;
    let outcome = LawOutcome::new("quotient", true)
        .detail("sim_equiv", format!("{:?}", e.blocks()))
        .detail("quotient_size", q.size());
    let doc = StructureDocument::from_structure(&q);
    let output = json!({ "blocks": blocks(&e), "quotient": doc });
    Ok(Report::from_outcome(outcome, &format!("quotient\n{canonical}")).with_output(output))
}

/// Parameters of `check`.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub law: Law,
    pub n: Option<usize>,
    pub qtypes: Vec<QuantifierType>,
    pub arities: Vec<usize>,
    pub count: Option<usize>,
    pub k: Option<usize>,
    pub seed: u64,
}

impl CheckOptions {
    /// Defaults for `law`: sampled instances, seed 0.
    pub fn new(law: Law) -> Self {
        CheckOptions {
            law,
            n: None,
            qtypes: Vec::new(),
            arities: Vec::new(),
            count: None,
            k: None,
            seed: 0,
        }
    }
}

/// Every relation of arity one or two and every type-(1) quantifier that is
/// affordable on `s`'s domain, judged against `aut(s)`.
pub fn check_kras_definability_sweep(s: &Structure, limits: &Limits) -> Result<LawOutcome> {
    let n = s.size();
    let mut targets: Vec<Object> = Vec::new();
    for k in 1..=2 {
        if n.pow(k as u32) <= 16 {
            targets.extend(enumerate_relations(n, k, limits)?.map(Object::from));
        }
    }
    if n <= 3 {
        targets.extend(enumerate_quantifiers(n, &QuantifierType::monadic(1)?, limits)?.into_iter().map(Object::from));
    }
    targets.extend(s.quantifiers().map(|(_, q)| q.clone().into()));
    let mut invariant = 0usize;
    for t in &targets {
        let o = check_kras_definability(s, t, limits)?;
        if !o.pass {
            return Ok(LawOutcome::new("kras-def", false)
                .detail("targets", targets.len())
                .counterexample(format!("target {t}: {}", o.counterexample.unwrap_or_default())));
        }
        invariant += o.details.iter().any(|(k, v)| k == "invariant" && v == "true") as usize;
    }
    Ok(LawOutcome::new("kras-def", true)
        .detail("targets", targets.len())
        .detail("invariant_targets", invariant))
}

fn check_mcgee(opts: &CheckOptions, limits: &Limits) -> Result<LawOutcome> {
    let n = opts.n.unwrap_or(3);
    let qtypes = if opts.qtypes.is_empty() && opts.arities.is_empty() {
        vec![QuantifierType::monadic(1)?]
    } else {
        opts.qtypes.clone()
    };
    let catalogue = mcgee_invariants(n, &opts.arities, &qtypes, limits)?;
    let mut out = catalogue.outcome();
    for (k, _, count) in &catalogue.relations {
        if n.pow(*k as u32) <= 16 {
            let brute = brute_force_invariant_relations(n, *k, limits)?;
            out = out.detail(format!("arity {k} brute force"), brute);
            if count.value() != Some(brute) {
                out.pass = false;
                out = out.counterexample(format!("arity {k}: orbit count {count}, brute force {brute}"));
            }
        }
    }
    for (qt, _, count) in &catalogue.quantifiers {
        let members = crate::model::MemberSpace::new(n, qt, limits)?.count();
        if members <= 16 {
            let brute = brute_force_invariant_quantifiers(n, qt, limits)?;
            out = out.detail(format!("type {qt} brute force"), brute);
            if count.value() != Some(brute) {
                out.pass = false;
                out = out.counterexample(format!("type {qt}: orbit count {count}, brute force {brute}"));
            }
        }
    }
    Ok(out)
}

fn structure_law(law: Law, s: &Structure, limits: &Limits) -> Result<LawOutcome> {
    match law {
        Law::KrasDef => check_kras_definability_sweep(s, limits),
        Law::Cor => check_cor_structure(s, limits),
        Law::Respect => check_respect(s, &[], limits),
        Law::Allisgood => check_allisgood_structure(s, limits),
        Law::Propaut => check_propaut(s, limits),
        Law::Bijective => check_bijective(s, limits),
        Law::KrasGroup | Law::Mcgee => unreachable!("not a structure law"),
    }
}

fn cmd_check(input: Option<&Path>, opts: &CheckOptions, limits: &Limits) -> Result<Report> {
    let text = input.map(read).transpose()?;
    check(text.as_deref(), opts, limits)
}

/// `check` on an optional document given as text; seeded instances when absent.
pub fn check(input: Option<&str>, opts: &CheckOptions, limits: &Limits) -> Result<Report> {
    let start = Instant::now();
    let mut report = check_inner(input, opts, limits)?;
    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

fn check_inner(input: Option<&str>, opts: &CheckOptions, limits: &Limits) -> Result<Report> {
    let law = opts.law;
    if law == Law::Mcgee {
        if input.is_some() {
            return Err(Error::Precondition("mcgee takes --n and --qtype/--arity, not an input file".into()));
        }
        let instance = format!("mcgee n={:?} qtypes={:?} arities={:?}", opts.n, opts.qtypes, opts.arities);
        return Ok(Report::from_outcome(check_mcgee(opts, limits)?, &instance));
    }
    if let Some(text) = input {
        let doc = Document::parse(text)?;
        let instance = format!("check {} k={:?}\n{}", law.name(), opts.k, doc.to_canonical_json()?);
        let outcome = match (&doc, law) {
            (Document::Transform(d), Law::KrasGroup) => {
                let t = d.to_transforms()?;
                let h = group_of(&t)?;
                check_kras_group_roundtrip(&h, opts.k.unwrap_or(t.size), limits)?.outcome()
            }
            (Document::Transform(d), Law::Cor) => check_cor_set(&similarity_set_of(&d.to_transforms()?)?, limits)?,
            (Document::Transform(d), Law::Allisgood) => {
                check_allisgood_set(&similarity_set_of(&d.to_transforms()?)?, limits)?
            }
            (Document::Structure(d), l) if l != Law::KrasGroup => structure_law(l, &d.to_structure()?, limits)?,
            _ => {
                return Err(Error::Precondition(format!(
                    "law {} does not take this kind of document",
                    law.name()
                )))
            }
        };
        return Ok(Report::from_outcome(outcome, &instance));
    }
    let mut sampler = Sampler::new(opts.seed);
    let (default_n, default_count) = match law {
        Law::KrasGroup => (5, 50),
        Law::Cor => (3, 20),
        _ => (3, 10),
    };
    let n = opts.n.unwrap_or(default_n);
    let count = opts.count.unwrap_or(default_count);
    let instance = format!("check {} seeded n={n} count={count} seed={} k={:?}", law.name(), opts.seed, opts.k);
    let mut outcomes = Vec::with_capacity(count);
    for _ in 0..count {
        let outcome = match law {
            Law::KrasGroup => {
                let h = sampler.generator_set(n);
                check_kras_group_roundtrip(&h, opts.k.unwrap_or(n), limits)?.outcome()
            }
            Law::Cor => check_cor_set(&sampler.similarity_set(n), limits)?,
            Law::Allisgood => {
                let s = sampler.structure(n, 2, 1)?;
                let p = sampler.similarity_set(n);
                LawOutcome::all(
                    "allisgood",
                    vec![check_allisgood_set(&p, limits)?, check_allisgood_structure(&s, limits)?],
                )
            }
            _ => structure_law(law, &sampler.structure(n, 2, 1)?, limits)?,
        };
        outcomes.push(outcome);
    }
    Ok(Report::from_outcome(aggregate(law.name(), outcomes), &instance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_modes_and_types() {
        assert_eq!(parse_mode("k=2").unwrap(), ClosureMode::K(2));
        assert_eq!(parse_mode("sets=3").unwrap(), ClosureMode::Sets(3));
        assert!(parse_mode("bogus").is_err());
        assert_eq!(parse_qtype("(1,2)").unwrap().slots(), &[1, 2]);
        assert_eq!(Law::KrasGroup.name(), "kras-group");
    }

    #[test]
    fn mcgee_check_counts() {
        let cli = Cli::try_parse_from(["galdual", "check", "--law", "mcgee", "--n", "3", "--qtype", "1"]).unwrap();
        let r = execute(&cli, &Limits::default()).unwrap();
        assert!(r.pass());
        assert!(r.details.iter().any(|(k, v)| k == "type (1) invariant quantifiers" && v == "16"), "{:?}", r.details);
    }
}
