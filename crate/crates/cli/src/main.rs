// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! `ldcforge`: JSON on stdout, a short summary on stderr. Exit status 0
//! means a positive result, 1 a verified negative one, 2 an error.

mod known;

use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use ldcforge::codec::{self, CorruptionPlan};
use ldcforge::compose::{self, Inventory};
use ldcforge::decpoly::{self, SearchOptions, Verdict};
use ldcforge::matchfam;
use ldcforge::modulus::{self, Primality};
use ldcforge::pir;
use ldcforge::{CodeSpec, DecodingPolynomial, FieldElement, FieldSpec, M2Certificate, MatchingFamily, PirScheme};

#[derive(Parser)]
#[command(
    name = "ldcforge",
    version,
    about = "Matching vector codes, decoding polynomials and PIR over GF(2^t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor 2^t - 1 for prime t and list the semiprimes.
    ScanMersenne {
        #[arg(long, default_value_t = 2)]
        t_min: u32,
        #[arg(long, default_value_t = 127)]
        t_max: u32,
        /// Factoring time per exponent, e.g. 30s or 2m.
        #[arg(long, default_value = "30s", value_parser = parse_duration)]
        budget: Duration,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether m = p q has a three-term decoding polynomial.
    M2Check {
        m: u64,
        #[arg(long, value_enum, default_value_t = Method::Collision)]
        method: Method,
        #[arg(long, value_parser = parse_duration)]
        budget: Option<Duration>,
        #[arg(long)]
        shards: Option<usize>,
        /// Key table budget in MiB.
        #[arg(long, default_value_t = 8192)]
        memory_mib: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Poly(PolyCommand),
    #[command(subcommand)]
    Family(FamilyCommand),
    #[command(subcommand)]
    Ldc(LdcCommand),
    /// Multiply decoding polynomials over coprime moduli.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Query budget for r primes from certified members.
    Plan {
        #[arg(long)]
        r: usize,
        /// Certificate files or directories of them.
        #[arg(long)]
        inventory: Vec<PathBuf>,
        /// Extra members taken as certified.
        #[arg(long, value_delimiter = ',')]
        member: Vec<u64>,
        /// Prime pool for the interpolation block.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Pir(PirCommand),
    /// Re-check the published polynomials and Mersenne semiprime rows.
    TableVerify {
        #[arg(long, default_value_t = 127)]
        t_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Collision,
    Brute,
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Three-term polynomial from the collision search.
    Find {
        m: u64,
        #[arg(long, value_parser = parse_duration)]
        budget: Option<Duration>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolating polynomial with up to 2^r terms.
    Lagrange {
        m: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a polynomial, certificate or composition file.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Family with all cross products equal to 1.
    Gram {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized family with cross products in the canonical set.
    Greedy {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum LdcCommand {
    /// Pair a family with a polynomial.
    Spec {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a message into a codeword file.
    Encode {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated hex field elements; random when absent.
        #[arg(long)]
        message: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Locally decode one position of a codeword file.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        codeword: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decode a randomly corrupted codeword many times.
    CorruptTest {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every query slot is uniform.
    Audit {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        i: usize,
    },
}

#[derive(Subcommand)]
enum PirCommand {
    /// Retrieve one bit from k simulated servers.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        /// Database bits, packed least significant bit first; random when absent.
        #[arg(long)]
        db: Option<PathBuf>,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the query distributions of two indices.
    Audit {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        i1: usize,
        #[arg(long, default_value_t = 1)]
        i2: usize,
    },
}

enum Outcome {
    Positive,
    Negative,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Positive
        } else {
            Outcome::Negative
        }
    }
}

fn parse_duration(s: &str) -> std::result::Result<Duration, String> {
    let s = s.trim();
    let split = s.find(|c: char| !c.is_ascii_digit() && c != '.').unwrap_or(s.len());
    let (num, unit) = s.split_at(split);
    let v: f64 = num.parse().map_err(|_| format!("bad duration {s:?}"))?;
    let secs = match unit {
        "" | "s" => v,
        "ms" => v / 1000.0,
        "m" | "min" => v * 60.0,
        "h" => v * 3600.0,
        _ => return Err(format!("unknown unit in {s:?}; use ms, s, m or h")),
    };
    Duration::try_from_secs_f64(secs).map_err(|e| e.to_string())
}

fn read_json(path: &Path) -> Result<Value> {
    let f = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    serde_json::from_reader(BufReader::new(f)).with_context(|| format!("parsing {}", path.display()))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_value(read_json(path)?).with_context(|| format!("reading {}", path.display()))
}

/// Accepts a bare polynomial or any object with a `poly` field.
fn load_poly(path: &Path) -> Result<DecodingPolynomial> {
    let v = read_json(path)?;
    let p = if v.get("terms").is_some() {
        v
    } else {
        match v.get("poly") {
            Some(p) if !p.is_null() => p.clone(),
            _ => bail!("{} holds no polynomial", path.display()),
        }
    };
    serde_json::from_value(p).with_context(|| format!("reading polynomial from {}", path.display()))
}

fn load_spec(path: &Path) -> Result<Arc<CodeSpec>> {
    Ok(Arc::new(load(path)?))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(p) = out {
        fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))?;
    }
    println!("{text}");
    Ok(())
}

fn m2_check(
    m: u64,
    method: Method,
    budget: Option<Duration>,
    shards: Option<usize>,
    memory_mib: u64,
) -> Result<M2Certificate> {
    Ok(match method {
        Method::Collision => decpoly::collision_search_with(
            m,
            &SearchOptions {
                shards,
                time_budget: budget,
                memory_budget: memory_mib << 20,
            },
        )?,
        Method::Brute => decpoly::brute_force_m2(m)?,
    })
}

fn certificate_outcome(c: &M2Certificate) -> Result<Outcome> {
    match c.verdict {
        Verdict::Member => Ok(Outcome::Positive),
        Verdict::NonMember => Ok(Outcome::Negative),
        Verdict::Unknown => bail!("undecided within the time budget"),
    }
}

fn parse_message(spec: &CodeSpec, message: Option<&str>, seed: u64) -> Result<Vec<FieldElement>> {
    let f = spec.field();
    match message {
        Some(s) => s
            .split(',')
            .map(|h| {
                let width = f.t().div_ceil(4) as usize;
                f.element_from_hex(&format!("{:0>width$}", h.trim()))
                    .map_err(anyhow::Error::from)
            })
            .collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..spec.n()).map(|_| f.random(&mut rng)).collect())
        }
    }
}

fn read_bits(path: &Path, n: usize) -> Result<Vec<bool>> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let bits: Vec<bool> = (0..bytes.len() * 8)
        .map(|i| (bytes[i / 8] >> (i % 8)) & 1 == 1)
        .collect();
    if let Some(extra) = bits.iter().skip(n).position(|b| *b) {
        bail!("database bit {} is set but the scheme holds {n} bits", n + extra);
    }
    Ok(bits.into_iter().take(n).collect())
}

fn collect_certificates(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)?
                .map(|e| e.map(|e| e.path()))
                .collect::<std::io::Result<_>>()?;
            inner.retain(|f| f.extension().is_some_and(|x| x == "json"));
            inner.sort();
            files.extend(inner);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

fn table_verify(t_max: u32) -> Result<(Value, bool)> {
    let mut all = true;
    let mut polys = Vec::new();
    for k in known::POLYNOMIALS {
        let field = FieldSpec::with_modulus_exponents(k.t, k.modulus_tail)?;
        let g = field.x();
        let p = DecodingPolynomial::from_terms(k.m, g.clone(), k.terms.iter().map(|(e, c)| (*e, g.pow_u64(*c))))?;
        let ok = p.verify();
        all &= ok;
        polys.push(json!({"m": k.m.to_string(), "t": k.t, "k": p.k(), "valid": ok}));
    }
    let mut rows = Vec::new();
    for (t, p) in known::MERSENNE_SEMIPRIMES.iter().filter(|(t, _)| *t <= t_max) {
        let m = (BigUint::one() << *t) - 1u32;
        let p: BigUint = p.parse()?;
        let divides = (&m % &p).is_zero();
        let q = &m / &p;
        let pp = modulus::primality(&p);
        let qp = modulus::primality(&q);
        let ok = divides && p < q && pp != Primality::Composite && qp != Primality::Composite;
        all &= ok;
        rows.push(json!({
            "t": t,
            "p": p.to_string(),
            "divides": divides,
            "p_primality": pp,
            "q_primality": qp,
            "ok": ok,
        }));
    }
    Ok((json!({"polynomials": polys, "mersenne": rows, "ok": all}), all))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::ScanMersenne {
            t_min,
            t_max,
            budget,
            out,
        } => {
            let scan = modulus::scan_mersenne(t_min, t_max, budget);
            eprintln!(
                "{} semiprime rows, {} exponents skipped",
                scan.rows.len(),
                scan.skipped.len()
            );
            emit(&scan, out.as_deref())?;
            Ok(Outcome::Positive)
        }
        Command::M2Check {
            m,
            method,
            budget,
            shards,
            memory_mib,
            out,
        } => {
            let c = m2_check(m, method, budget, shards, memory_mib)?;
            eprintln!("{m}: {:?}", c.verdict);
            emit(&c, out.as_deref())?;
            certificate_outcome(&c)
        }
        Command::Poly(PolyCommand::Find { m, budget, out }) => {
            let c = m2_check(m, Method::Collision, budget, None, 8192)?;
            match c.polynomial() {
                Some(p) => {
                    eprintln!("{m}: {} terms", p.k());
                    emit(p, out.as_deref())?;
                }
                None => {
                    eprintln!("{m}: {:?}", c.verdict);
                    emit(&c, out.as_deref())?;
                }
            }
            certificate_outcome(&c)
        }
        Command::Poly(PolyCommand::Lagrange { m, out }) => {
            let p = decpoly::lagrange_polynomial(m)?;
            eprintln!("{m}: {} terms", p.k());
            emit(&p, out.as_deref())?;
            Ok(Outcome::Positive)
        }
        Command::Poly(PolyCommand::Verify { file }) => {
            let p = load_poly(&file)?;
            let v = p.violation();
            eprintln!("{}: {}", file.display(), if v.is_none() { "valid" } else { "invalid" });
            emit(
                &json!({"m": p.m().to_string(), "k": p.k(), "valid": v.is_none(), "violation": v.as_ref().map(|v| format!("{v:?}"))}),
                None,
            )?;
            Ok(v.is_none().into())
        }
        Command::Family(FamilyCommand::Gram { m, n, out }) => {
            let f = matchfam::gram_family(m, n)?;
            eprintln!("{} vectors in Z_{m}^{}", f.n, f.h);
            emit(&f, out.as_deref())?;
            Ok(Outcome::Positive)
        }
        Command::Family(FamilyCommand::Greedy {
            m,
            h,
            n,
            seed,
            samples,
            out,
        }) => {
            let f = matchfam::greedy_search(m, h, n, seed, samples)?;
            eprintln!("{} of {n} vectors found", f.n);
            emit(&f, out.as_deref())?;
            Ok((f.n == n).into())
        }
        Command::Family(FamilyCommand::Verify { file }) => {
            let f: MatchingFamily = load(&file)?;
            let v = matchfam::verify_matching(&f);
            eprintln!("{}: {}", file.display(), if v.is_none() { "valid" } else { "invalid" });
            emit(
                &json!({"valid": v.is_none(), "violation": v.as_ref().map(|v| format!("{v:?}"))}),
                None,
            )?;
            Ok(v.is_none().into())
        }
        Command::Ldc(LdcCommand::Spec { family, poly, out }) => {
            let spec = CodeSpec::new(load(&family)?, load_poly(&poly)?)?;
            eprintln!("N = {}, n = {}, k = {}", spec.len(), spec.n(), spec.k());
            emit(&spec, out.as_deref())?;
            Ok(Outcome::Positive)
        }
        Command::Ldc(LdcCommand::Encode {
            spec,
            message,
            seed,
            out,
        }) => {
            let spec = load_spec(&spec)?;
            let x = parse_message(&spec, message.as_deref(), seed)?;
            let cw = codec::encode(&spec, &x)?;
            let f = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            codec::write_codeword(&cw, BufWriter::new(f))?;
            eprintln!("wrote {} coordinates to {}", cw.len(), out.display());
            emit(
                &json!({
                    "t": spec.field().t(),
                    "m": spec.m(),
                    "h": spec.h(),
                    "len": cw.len(),
                    "message": x.iter().map(|e| e.to_hex()).collect::<Vec<_>>(),
                    "out": out,
                }),
                None,
            )?;
            Ok(Outcome::Positive)
        }
        Command::Ldc(LdcCommand::Decode {
            spec,
            codeword,
            i,
            seed,
        }) => {
            let spec = load_spec(&spec)?;
            let f = fs::File::open(&codeword).with_context(|| format!("opening {}", codeword.display()))?;
            let cw = codec::read_codeword(&spec, BufReader::new(f))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = codec::random_vector(&spec, &mut rng);
            let queries = spec.queries(i, &v)?;
            let value = codec::local_decode_at(&spec, |q| cw.get(q).expect("query in range"), i, &v)?;
            eprintln!("position {i}: {}", value.to_hex());
            emit(
                &json!({"i": i, "v": v, "queries": queries, "value": value.to_hex()}),
                None,
            )?;
            Ok(Outcome::Positive)
        }
        Command::Ldc(LdcCommand::CorruptTest {
            spec,
            delta,
            trials,
            seed,
            out,
        }) => {
            let spec = load_spec(&spec)?;
            let x = parse_message(&spec, None, seed)?;
            let report = codec::success_rate(
                &spec,
                &x,
                &CorruptionPlan::uniform(delta, seed),
                trials,
                seed.wrapping_add(1),
            )?;
            let kd = (spec.k() as f64 * delta).min(1.0);
            let tolerance = 3.0 * (kd * (1.0 - kd) / trials as f64).sqrt();
            let pass = report.rates.iter().all(|r| *r >= report.floor - tolerance);
            eprintln!("rates {:?}, floor {:.4}", report.rates, report.floor);
            emit(
                &json!({"report": report, "tolerance": tolerance, "pass": pass}),
                out.as_deref(),
            )?;
            Ok(pass.into())
        }
        Command::Ldc(LdcCommand::Audit { spec, i }) => {
            let spec = load_spec(&spec)?;
            let a = codec::smoothness_audit(&spec, i)?;
            eprintln!(
                "{} slots over N = {}: uniform = {}",
                a.histograms.len(),
                spec.len(),
                a.uniform
            );
            emit(
                &json!({"i": i, "slots": a.histograms.len(), "len": spec.len(), "uniform": a.uniform}),
                None,
            )?;
            Ok(a.uniform.into())
        }
        Command::Compose { left, right, out } => {
            let c = compose::compose_detailed(&load_poly(&left)?, &load_poly(&right)?)?;
            eprintln!(
                "m = {}, t = {}, {} terms (bound {})",
                c.poly.m(),
                c.plan.t,
                c.poly.k(),
                c.k_bound
            );
            emit(&c, out.as_deref())?;
            Ok(Outcome::Positive)
        }
        Command::Plan {
            r,
            inventory,
            member,
            primes,
            out,
        } => {
            let mut members = Vec::new();
            for f in collect_certificates(&inventory)? {
                let c: M2Certificate = match load(&f) {
                    Ok(c) => c,
                    Err(_) => {
                        eprintln!("skipping {}: not a certificate", f.display());
                        continue;
                    }
                };
                if c.is_member() && c.polynomial().is_some_and(|p| p.verify()) {
                    members.push(c.m);
                } else {
                    eprintln!("skipping {}: not a verified member", f.display());
                }
            }
            members.extend(member);
            let plan = compose::plan_queries(r, &Inventory { members, primes })?;
            eprintln!("r = {r}: k <= {}", plan.k_bound);
            emit(&plan, out.as_deref())?;
            Ok(Outcome::Positive)
        }
        Command::Pir(PirCommand::Simulate { spec, db, i, seed, out }) => {
            let scheme = PirScheme::new(load_spec(&spec)?);
            let bits = match db {
                Some(p) => read_bits(&p, scheme.n())?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
                    (0..scheme.n()).map(|_| rng.gen()).collect()
                }
            };
            let t = pir::simulate(&scheme, &bits, i, seed)?;
            let expected = bits.get(i).copied().unwrap_or(false);
            eprintln!(
                "bit {i} = {} ({} servers, {} bits)",
                u8::from(t.output),
                scheme.k(),
                t.comm_bits
            );
            emit(&t, out.as_deref())?;
            Ok((t.output == expected).into())
        }
        Command::Pir(PirCommand::Audit { spec, i1, i2 }) => {
            let scheme = PirScheme::new(load_spec(&spec)?);
            let a = pir::privacy_audit(&scheme, i1, i2)?;
            eprintln!("indices {i1} and {i2}: private = {}", a.verdict);
            emit(&a, None)?;
            Ok(a.verdict.into())
        }
        Command::TableVerify { t_max, out } => {
            let (report, ok) = table_verify(t_max)?;
            eprintln!("published data {}", if ok { "confirmed" } else { "NOT confirmed" });
            emit(&report, out.as_deref())?;
            Ok(ok.into())
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("LDCFORGE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow!("LDCFORGE_THREADS must be a positive integer"))?;
        if n == 0 {
            bail!("LDCFORGE_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
