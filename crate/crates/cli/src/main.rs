//! `preproj`: build bound quiver algebras of generalized Dynkin type,
//! inspect their invariants, check the explicit isomorphisms, and reproduce
//! the classification results at small rank.
//!
//! Exit codes: 0 pass, 1 fail, 2 unknown, 3 usage error.

use clap::{Args, Parser, Subcommand};
use preproj::dsl::{self, Params};
use preproj::field::{FieldSpec, Fp, Rat, Scalar};
use preproj::morphisms::{check_pair_opts, scaling_pair, verify_mutually_inverse, MorphismCase};
use preproj::presentations::{
    a_prime, a_second, canonical_star, l_algebra, local_algebra, parse_deform, preprojective,
    ProofCase,
};
use preproj::quiver::DynkinType;
use preproj::quotient::{CapPolicy, Presentation};
use preproj::verify::{merge_reports, verify_paper, Status, TheoremReport, VerifyOptions};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "preproj", version, about = "preprojective algebras of generalized Dynkin type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and report its dimensions
    Build(SelectArgs),
    /// Build an algebra and report its structural invariants
    Info(SelectArgs),
    /// Decide whether the algebra is symmetric
    Symmetry(SelectArgs),
    /// Canonical isomorphism-invariant fingerprint
    Fingerprint(SelectArgs),
    /// Check a catalog isomorphism pair
    CheckIso(CheckIsoArgs),
    /// Reproduce the classification results at small rank
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Clone)]
struct SelectArgs {
    /// Dynkin family: A, D, E or L
    #[arg(long = "type")]
    family: Option<String>,
    #[arg(long)]
    rank: Option<u32>,
    /// the canonical socle deformation P*(Δ) instead of P(Δ)
    #[arg(long)]
    star: bool,
    /// the one-vertex local algebra R(Δ) instead of P(Δ)
    #[arg(long)]
    local: bool,
    /// deformation parameter f in x (type L) or x, y (types D, E)
    #[arg(long)]
    deform: Option<String>,
    /// L_n^(r): shorthand for --deform x^(2r)
    #[arg(long)]
    lr: Option<u32>,
    /// θ-parameterized proof presentation, e.g. `deven`, `e7prime`, `e7second`
    #[arg(long)]
    case: Option<String>,
    /// collapsed (A'') form of --case
    #[arg(long)]
    second: bool,
    /// θ coefficients: repeated `i=v` pairs, or a single bare value
    #[arg(long = "theta")]
    theta: Vec<String>,
    /// presentation file (.qpa) instead of a built-in family
    #[arg(long)]
    file: Option<String>,
    /// parameter bindings for --file, `name=value`
    #[arg(long = "param")]
    params: Vec<String>,
    #[arg(long, default_value = "gf2")]
    field: String,
    /// fixed truncation cap (default: automatic)
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 24)]
    budget_bits: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct CheckIsoArgs {
    /// catalog case: aodd, dodd, deven, e6, e7, e8, l, deven-char-not2,
    /// e7-char-not2, e8-char-not2, l-char-not2, or scaling
    #[arg(long)]
    case: String,
    #[arg(long)]
    rank: u32,
    #[arg(long = "theta")]
    theta: Vec<String>,
    /// for --case scaling: the proof case (deven, l, e7, e8)
    #[arg(long)]
    proof_case: Option<String>,
    /// for --case scaling: the diagonal scalar λ
    #[arg(long)]
    lambda: Option<i64>,
    #[arg(long, default_value = "gf2")]
    field: String,
    /// additionally verify the compositions on the full basis
    #[arg(long)]
    deep: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// comma-separated fields, e.g. gf2,gf3,rat
    #[arg(long, default_value = "gf2,gf3,rat")]
    fields: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 24)]
    budget_bits: u32,
    /// include the E_8 jobs
    #[arg(long)]
    heavy: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let code = match cli.command {
        Command::Build(a) => with_field(&a.field.clone(), a, cmd_build::<Fp>, cmd_build::<Rat>),
        Command::Info(a) => with_field(&a.field.clone(), a, cmd_info::<Fp>, cmd_info::<Rat>),
        Command::Symmetry(a) => {
            with_field(&a.field.clone(), a, cmd_symmetry::<Fp>, cmd_symmetry::<Rat>)
        }
        Command::Fingerprint(a) => {
            with_field(&a.field.clone(), a, cmd_fingerprint::<Fp>, cmd_fingerprint::<Rat>)
        }
        Command::CheckIso(a) => {
            let field = a.field.clone();
            with_field(&field, a, cmd_check_iso::<Fp>, cmd_check_iso::<Rat>)
        }
        Command::VerifyPaper(a) => cmd_verify_paper(a),
    };
    ExitCode::from(code)
}

fn with_field<A>(
    field: &str,
    args: A,
    fp: impl FnOnce(FieldSpec, A) -> u8,
    rat: impl FnOnce(FieldSpec, A) -> u8,
) -> u8 {
    match FieldSpec::parse(field) {
        Ok(spec @ FieldSpec::PrimeField(_)) => fp(spec, args),
        Ok(spec @ FieldSpec::Rationals) => rat(spec, args),
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

fn parse_kv_list<K: Scalar>(items: &[String], spec: &FieldSpec, len: usize) -> Result<Vec<K>, String> {
    let mut v = vec![K::zero(); len];
    if items.len() == 1 && !items[0].contains('=') && len == 1 {
        let val: i64 = items[0].parse().map_err(|_| format!("bad θ value `{}`", items[0]))?;
        v[0] = K::from_spec_int(spec, val);
        return Ok(v);
    }
    for it in items {
        let (k, val) = it
            .split_once('=')
            .ok_or_else(|| format!("expected i=v, got `{it}`"))?;
        let k: usize = k.trim().parse().map_err(|_| format!("bad θ index `{k}`"))?;
        let val: i64 = val.trim().parse().map_err(|_| format!("bad θ value `{val}`"))?;
        if k >= len {
            return Err(format!("θ index {k} out of range (case takes {len})"));
        }
        v[k] = K::from_spec_int(spec, val);
    }
    Ok(v)
}

/// θ index offset: the D_odd case stores θ_2..θ_{n-1}.
fn theta_offset(case: ProofCase) -> usize {
    if case == ProofCase::DOdd {
        2
    } else {
        0
    }
}

fn resolve_presentation<K: Scalar>(
    spec: FieldSpec,
    a: &SelectArgs,
) -> Result<Presentation<K>, String> {
    let mut pres = if let Some(path) = &a.file {
        let src = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let file = dsl::parse_presentation_file(&src, path).map_err(|e| e.to_string())?;
        let mut params: Params<K> = Params::new();
        for p in &a.params {
            let (k, v) = p.split_once('=').ok_or_else(|| format!("expected name=value, got `{p}`"))?;
            let v: i64 = v.trim().parse().map_err(|_| format!("bad value in `{p}`"))?;
            params.insert(k.trim().to_string(), K::from_spec_int(&spec, v));
        }
        file.bind_over(spec, &params).map_err(|e| e.to_string())?
    } else if let Some(case_str) = &a.case {
        let lower = case_str.to_ascii_lowercase();
        let (name, second) = if let Some(stripped) = lower.strip_suffix("second") {
            (stripped.to_string(), true)
        } else if let Some(stripped) = lower.strip_suffix("prime") {
            (stripped.to_string(), false)
        } else {
            (lower.clone(), a.second)
        };
        let case = ProofCase::parse(&name).ok_or_else(|| format!("unknown case `{case_str}`"))?;
        let n = a.rank.ok_or("--rank is required with --case")?;
        if second {
            let th = parse_kv_list::<K>(&a.theta, &spec, 1)?;
            a_second(case, n, &th[0], spec).map_err(|e| e.to_string())?
        } else {
            let len = case.theta_len(n);
            let off = theta_offset(case);
            // accept paper-numbered indices (e.g. 2..n-1 for D_odd)
            let shifted: Vec<String> = a
                .theta
                .iter()
                .map(|s| match s.split_once('=') {
                    Some((k, v)) => match k.trim().parse::<usize>() {
                        Ok(k) if k >= off => format!("{}={}", k - off, v),
                        _ => s.clone(),
                    },
                    None => s.clone(),
                })
                .collect();
            let th = parse_kv_list::<K>(&shifted, &spec, len)?;
            a_prime(case, n, &th, spec).map_err(|e| e.to_string())?
        }
    } else {
        let fam = a.family.as_deref().ok_or("--type/--rank, --case or --file is required")?;
        let n = a.rank.ok_or("--rank is required with --type")?;
        let t = DynkinType::parse(fam, n).map_err(|e| e.to_string())?;
        if a.local {
            local_algebra::<K>(t, spec)
        } else if a.star {
            canonical_star::<K>(t, spec).map_err(|e| e.to_string())?
        } else if let Some(r) = a.lr {
            l_algebra::<K>(n, r, spec).map_err(|e| e.to_string())?
        } else if let Some(f_src) = &a.deform {
            let f = parse_deform::<K>(t, f_src, spec).map_err(|e| e.to_string())?;
            preproj_deformed(t, &f, spec)?
        } else {
            preprojective::<K>(t, spec)
        }
    };
    if let Some(cap) = a.cap {
        pres = pres.with_cap(CapPolicy::Fixed(cap));
    }
    Ok(pres)
}

fn preproj_deformed<K: Scalar>(
    t: DynkinType,
    f: &preproj::presentations::DeformParam<K>,
    spec: FieldSpec,
) -> Result<Presentation<K>, String> {
    preproj::presentations::deformed(t, f, spec).map_err(|e| e.to_string())
}

#[derive(serde::Serialize)]
struct BuildReport {
    schema_version: u32,
    label: String,
    field: String,
    dimension: usize,
    dims_by_pair: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    loewy_length: usize,
    cap_used: usize,
    presentation_hash: String,
}

fn emit(json: bool, out: &Option<String>, value: &impl serde::Serialize, human: String) -> u8 {
    let text = if json || out.is_some() {
        serde_json::to_string_pretty(value).expect("serializable report")
    } else {
        human.clone()
    };
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error writing {path}: {e}");
            return 1;
        }
        if !json {
            println!("{human}");
        }
    } else {
        println!("{text}");
    }
    0
}

fn cmd_build<K: Scalar>(spec: FieldSpec, a: SelectArgs) -> u8 {
    let pres = match resolve_presentation::<K>(spec, &a) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match pres.build() {
        Ok(alg) => {
            let rep = BuildReport {
                schema_version: 1,
                label: pres.label.clone(),
                field: spec.to_string(),
                dimension: alg.dim(),
                dims_by_pair: alg.dims_by_pair(),
                degrees: alg.hilbert_by_degree(),
                loewy_length: alg.loewy_length(),
                cap_used: alg.cap_used(),
                presentation_hash: pres.hash(),
            };
            let human = format!(
                "{} over {}: dimension {}, Loewy length {}, degrees {:?}",
                rep.label, rep.field, rep.dimension, rep.loewy_length, rep.degrees
            );
            emit(a.json, &a.out, &rep, human)
        }
        Err(e) => {
            eprintln!("build failed: {e}");
            1
        }
    }
}

fn cmd_info<K: Scalar>(spec: FieldSpec, a: SelectArgs) -> u8 {
    let pres = match resolve_presentation::<K>(spec, &a) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match pres.build() {
        Ok(alg) => {
            let rep = alg.invariant_report(1u64 << a.budget_bits.min(62), a.seed);
            let human = format!(
                "{} over {}: dim {}, Loewy {}, self-injective {}, weakly symmetric {}, symmetry {}, ν {:?}, center dim {}",
                rep.label,
                rep.field,
                rep.dimension,
                rep.loewy_length,
                rep.self_injective,
                rep.weakly_symmetric,
                rep.symmetry,
                rep.nakayama,
                rep.center_dim,
            );
            let code = emit(a.json, &a.out, &rep, human);
            if code != 0 {
                return code;
            }
            if rep.symmetry == "unknown" {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("build failed: {e}");
            1
        }
    }
}

fn cmd_symmetry<K: Scalar>(spec: FieldSpec, a: SelectArgs) -> u8 {
    let pres = match resolve_presentation::<K>(spec, &a) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match pres.build() {
        Ok(alg) => {
            let verdict = alg.symmetry_decide(1u64 << a.budget_bits.min(62), a.seed);
            #[derive(serde::Serialize)]
            struct SymReport {
                label: String,
                field: String,
                verdict: &'static str,
            }
            let rep = SymReport {
                label: pres.label.clone(),
                field: spec.to_string(),
                verdict: verdict.kind(),
            };
            let human = format!("{} over {}: {}", rep.label, rep.field, rep.verdict);
            let code = emit(a.json, &a.out, &rep, human);
            if code != 0 {
                return code;
            }
            match verdict.kind() {
                "unknown" => 2,
                _ => 0,
            }
        }
        Err(e) => {
            eprintln!("build failed: {e}");
            1
        }
    }
}

fn cmd_fingerprint<K: Scalar>(spec: FieldSpec, a: SelectArgs) -> u8 {
    let pres = match resolve_presentation::<K>(spec, &a) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match pres.build() {
        Ok(alg) => {
            let fp = alg.fingerprint(1u64 << a.budget_bits.min(62), a.seed);
            let human = format!("{} over {}: {:?}", pres.label, spec, fp);
            emit(a.json, &a.out, &fp, human)
        }
        Err(e) => {
            eprintln!("build failed: {e}");
            1
        }
    }
}

fn cmd_check_iso<K: Scalar>(spec: FieldSpec, a: CheckIsoArgs) -> u8 {
    if a.case.eq_ignore_ascii_case("scaling") {
        let Some(pc) = a.proof_case.as_deref().and_then(ProofCase::parse) else {
            eprintln!("error: --case scaling needs --proof-case deven|l|e7|e8");
            return 3;
        };
        let lambda = K::from_spec_int(&spec, a.lambda.unwrap_or(1));
        return match scaling_pair::<K>(pc, a.rank, &lambda, spec) {
            Ok((pair, theta)) => {
                let ok = pair.phi.well_defined().is_ok()
                    && pair.psi.well_defined().is_ok()
                    && verify_mutually_inverse(&pair.phi, &pair.psi, &pair.source_alg);
                println!(
                    "scaling P*({pc:?} rank {}) -> A''(θ={theta}) over {spec}: {}",
                    a.rank,
                    if ok { "pass" } else { "fail" }
                );
                u8::from(!ok)
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        };
    }
    let Some(case) = MorphismCase::parse(&a.case) else {
        eprintln!("error: unknown case `{}`", a.case);
        return 3;
    };
    let len = case.theta_len(a.rank);
    let off = case.proof_case().map(theta_offset).unwrap_or(0);
    let shifted: Vec<String> = a
        .theta
        .iter()
        .map(|s| match s.split_once('=') {
            Some((k, v)) => match k.trim().parse::<usize>() {
                Ok(k) if k >= off => format!("{}={}", k - off, v),
                _ => s.clone(),
            },
            None => s.clone(),
        })
        .collect();
    let th = match parse_kv_list::<K>(&shifted, &spec, len) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match check_pair_opts(case, a.rank, &th, spec, a.deep) {
        Ok(rep) => {
            let human = format!(
                "{} rank {} over {}: {}{}",
                rep.case,
                rep.rank,
                rep.field,
                if rep.pass { "pass" } else { "fail" },
                if rep.detail.is_empty() { String::new() } else { format!(" ({})", rep.detail) }
            );
            let code = emit(a.json, &a.out, &rep, human);
            if code != 0 {
                return code;
            }
            u8::from(!rep.pass)
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_verify_paper(a: VerifyArgs) -> u8 {
    let mut fields = Vec::new();
    for part in a.fields.split(',') {
        match FieldSpec::parse(part) {
            Ok(f) => fields.push(f),
            Err(e) => {
                eprintln!("error: {e}");
                return 3;
            }
        }
    }
    let opts = VerifyOptions { fields, seed: a.seed, budget_bits: a.budget_bits, heavy: a.heavy };
    let has_prime = opts.fields.iter().any(|f| matches!(f, FieldSpec::PrimeField(_)));
    let has_rat = opts.fields.iter().any(|f| matches!(f, FieldSpec::Rationals));
    let report: TheoremReport = match (has_prime, has_rat) {
        (true, true) => {
            let (rp, rq) =
                rayon::join(|| verify_paper::<Fp>(&opts), || verify_paper::<Rat>(&opts));
            merge_reports(rp, rq)
        }
        (true, false) => verify_paper::<Fp>(&opts),
        (false, true) => verify_paper::<Rat>(&opts),
        (false, false) => {
            eprintln!("error: no fields selected");
            return 3;
        }
    };
    if a.json || a.out.is_some() {
        let text = serde_json::to_string_pretty(&report).expect("serializable");
        if let Some(path) = &a.out {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error writing {path}: {e}");
                return 1;
            }
        } else {
            println!("{text}");
        }
    }
    if !a.json {
        for claim in &report.claims {
            println!("[{:?}] {} — {}", claim.status, claim.id, claim.title);
            for inst in &claim.instances {
                if inst.status != Status::Pass {
                    println!("    [{:?}] {} — {}", inst.status, inst.name, inst.detail);
                }
            }
            let pass = claim.instances.iter().filter(|i| i.status == Status::Pass).count();
            let skip = claim.instances.iter().filter(|i| i.status == Status::Skip).count();
            println!("    {pass} pass, {skip} skip, {} total", claim.instances.len());
        }
        println!("overall: {:?} (seed {})", report.overall, report.seed);
    }
    match report.overall {
        Status::Pass | Status::Skip => 0,
        Status::Fail => 1,
        Status::Unknown => 2,
    }
}
