use std::fmt::Write as _;
use std::ops::RangeInclusive;

use pfaffian_core::chartwo::{char2_max_cohom_check, lambda2_complex};
use pfaffian_core::cohomology::{
    default_window, horrocks_bundle, local_cohomology_dims, sheaf_cohomology_table, FiniteLengthModule,
};
use pfaffian_core::complexes::{
    be_exactness_certificate, exact_except_top_certificate, minimal_free_resolution, FreeComplex, GradedMap,
    PresentedModule,
};
use pfaffian_core::groebner::Ideal;
use pfaffian_core::pfaffian::{
    build_pfaffian_resolution, certify_pfaffian_scheme, pfaffian, random_skew, sub_pfaffians, SkewMatrix,
};
use pfaffian_core::structure::pfaffianize;
use pfaffian_core::{Error, Field, Polynomial, Ring};
use serde_json::{json, Value};

use crate::input::{self, InputError, Parsed, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Pf,
    Build,
    Certify,
    Pfaffianize,
    Resolve,
    Cohomology,
    Horrocks,
    Lambda2,
    #[value(name = "char2-check")]
    Char2Check,
    #[value(name = "random-skew")]
    RandomSkew,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub tmin: Option<i64>,
    pub tmax: Option<i64>,
    pub length_bound: Option<usize>,
    pub sub: bool,
}

/// Result of one job: `passed` decides the exit status.
pub struct Report {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

impl Report {
    fn pass(json: Value, text: String) -> Self {
        Report { passed: true, json, text }
    }
}

fn strings<K: Field>(ps: &[Polynomial<K>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn matrix_json<K: Field>(m: &[Vec<Polynomial<K>>]) -> Value {
    json!(m.iter().map(|r| strings(r)).collect::<Vec<_>>())
}

fn map_json<K: Field>(d: &GradedMap<K>) -> Value {
    json!({
        "source": d.source().twists(),
        "target": d.target().twists(),
        "matrix": matrix_json(d.entries()),
    })
}

fn complex_json<K: Field>(c: &FreeComplex<K>) -> Value {
    json!({
        "lo": c.lo(),
        "maps": c.differentials().iter().map(map_json).collect::<Vec<_>>(),
    })
}

fn ring_json(spec: &RingSpec) -> Value {
    let order = match spec.order {
        pfaffian_core::TermOrder::GrevLex => "grevlex",
        pfaffian_core::TermOrder::DegLex => "deglex",
        pfaffian_core::TermOrder::Lex => "lex",
    };
    json!({"vars": spec.vars, "char": spec.characteristic, "order": order})
}

fn skew_json<K: Field>(spec: &RingSpec, f: &SkewMatrix<K>) -> Value {
    json!({
        "ring": ring_json(spec),
        "matrix": matrix_json(f.entries()),
        "twists": f.e_twists(),
        "t": f.t(),
    })
}

fn window<K: Field>(m: &PresentedModule<K>, opts: &Options) -> Parsed<RangeInclusive<i64>> {
    let (lo, hi) = match (opts.tmin, opts.tmax) {
        (Some(lo), Some(hi)) => (lo, hi),
        (lo, hi) => {
            let d = default_window(m);
            (lo.unwrap_or(*d.start()), hi.unwrap_or(*d.end()))
        }
    };
    if lo > hi {
        return Err(InputError::new("", format!("empty twist window {lo}..{hi}")));
    }
    Ok(lo..=hi)
}

fn finite_length<K: Field>(m: PresentedModule<K>) -> Parsed<FiniteLengthModule<K>> {
    FiniteLengthModule::new(m).map_err(|e| InputError::new("/module", e.to_string()))
}

fn index_field(doc: &Value, key: &str) -> Parsed<usize> {
    input::uint(input::field(doc, "", key)?, &format!("/{key}"))
}

pub fn run<K: Field>(cmd: Command, doc: &Value, spec: &RingSpec, opts: &Options) -> Parsed<Report> {
    let ring: Ring<K> = spec.build()?;
    match cmd {
        Command::Pf => pf(&ring, doc, opts),
        Command::Build => build(&ring, doc),
        Command::Certify => certify(&ring, doc),
        Command::Pfaffianize => run_pfaffianize(&ring, doc, spec),
        Command::Resolve => resolve(&ring, doc, opts),
        Command::Cohomology => cohomology(&ring, doc, opts),
        Command::Horrocks => horrocks(&ring, doc, opts),
        Command::Lambda2 => lambda2(&ring, doc),
        Command::Char2Check => char2_check(&ring, doc, opts),
        Command::RandomSkew => run_random_skew(&ring, doc, spec, opts),
    }
}

fn pf<K: Field>(ring: &Ring<K>, doc: &Value, opts: &Options) -> Parsed<Report> {
    let a = input::matrix(ring, input::field(doc, "", "matrix")?, "/matrix")?;
    let err = |e: Error| InputError::new("/matrix", e.to_string());
    if opts.sub {
        let g = sub_pfaffians(&a).map_err(err)?;
        let text = g.iter().enumerate().map(|(i, p)| format!("g{i} = {p}\n")).collect();
        Ok(Report::pass(json!({"sub_pfaffians": strings(&g)}), text))
    } else {
        let p = pfaffian(&a).map_err(err)?;
        Ok(Report::pass(json!({"pfaffian": p.to_string()}), format!("pf = {p}\n")))
    }
}

fn build<K: Field>(ring: &Ring<K>, doc: &Value) -> Parsed<Report> {
    let f = input::skew(ring, doc)?;
    let res = build_pfaffian_resolution(&f).map_err(|e| InputError::new("/matrix", e.to_string()))?;
    let c = &res.complex;
    let json = json!({
        "s": res.s(),
        "t": res.t(),
        "l": res.l(),
        "twists": c.twists(),
        "sub_pfaffians": strings(&res.sub_pfaffians),
        "complex": complex_json(c),
        "betti": c.betti_table(),
    });
    let mut text = String::new();
    writeln!(text, "s = {}, t = {}, l = {}", res.s(), res.t(), res.l()).unwrap();
    writeln!(text, "{c}").unwrap();
    writeln!(text, "{}", c.betti_table()).unwrap();
    for (k, d) in c.differentials().iter().enumerate() {
        writeln!(text, "d{}:\n{d}", k + 1).unwrap();
    }
    Ok(Report::pass(json, text))
}

fn certify<K: Field>(ring: &Ring<K>, doc: &Value) -> Parsed<Report> {
    if input::opt_field(doc, "complex").is_some() {
        return match input::complex(ring, doc)? {
            Ok(c) => {
                let cert = be_exactness_certificate(&c).map_err(|e| InputError::new("/complex", e.to_string()))?;
                let text = format!("certificate: {}\n{cert}", if cert.exact { "PASS" } else { "FAILED" });
                Ok(Report { passed: cert.exact, json: serde_json::to_value(&cert).unwrap(), text })
            }
            Err(k) => {
                let violation = format!("not a complex: d_{k} composed with d_{} is nonzero", k + 1);
                let json = json!({"exact": false, "violations": [violation]});
                Ok(Report { passed: false, json, text: format!("certificate: FAILED\nviolated: {violation}\n") })
            }
        };
    }
    let f = input::skew(ring, doc)?;
    let res = build_pfaffian_resolution(&f).map_err(|e| InputError::new("/matrix", e.to_string()))?;
    let cert = certify_pfaffian_scheme(&res).map_err(|e| InputError::new("/ring/vars", e.to_string()))?;
    Ok(Report { passed: cert.passed, json: serde_json::to_value(&cert).unwrap(), text: cert.to_string() })
}

fn run_pfaffianize<K: Field>(ring: &Ring<K>, doc: &Value, spec: &RingSpec) -> Parsed<Report> {
    let gens = input::polys(ring, input::field(doc, "", "ideal")?, "/ideal")?;
    let ideal = Ideal::new(ring, gens).map_err(|e| InputError::new("/ideal", e.to_string()))?;
    match pfaffianize(&ideal) {
        Ok(r) => {
            let mut json = skew_json(spec, &r.skew);
            json["checks"] = serde_json::to_value(&r.checks).unwrap();
            json["betti"] = serde_json::to_value(r.resolution.complex.betti_table()).unwrap();
            let text = format!(
                "skew matrix (e = {:?}, t = {}):\n{}{}\n",
                r.skew.e_twists(),
                r.skew.t(),
                r.skew.map(),
                r.checks
            );
            let passed = r.checks.ideal_equal && r.checks.odd_rank;
            Ok(Report { passed, json, text })
        }
        Err(e @ (Error::NotGorenstein(_) | Error::EmptyScheme)) => {
            let violation = e.to_string();
            Ok(Report {
                passed: false,
                json: json!({"violations": [violation]}),
                text: format!("pfaffianization: FAILED\nviolated: {violation}\n"),
            })
        }
        Err(e) => Err(InputError::new("/ideal", e.to_string())),
    }
}

fn resolve<K: Field>(ring: &Ring<K>, doc: &Value, opts: &Options) -> Parsed<Report> {
    let m = input::module(ring, doc)?;
    let bound = opts.length_bound.unwrap_or(ring.nvars() + 1);
    let res = minimal_free_resolution(&m, bound);
    let betti = res.betti_table();
    let json = json!({"twists": res.twists(), "betti": betti, "complex": complex_json(&res)});
    Ok(Report::pass(json, format!("{res}\n{betti}")))
}

fn cohomology<K: Field>(ring: &Ring<K>, doc: &Value, opts: &Options) -> Parsed<Report> {
    let m = input::module(ring, doc)?;
    let w = window(&m, opts)?;
    let local = local_cohomology_dims(&m, w.clone());
    let sheaf = sheaf_cohomology_table(&m, w);
    let text = format!("{local}\n{sheaf}\n");
    Ok(Report::pass(json!({"local": local, "sheaf": sheaf}), text))
}

fn horrocks<K: Field>(ring: &Ring<K>, doc: &Value, opts: &Options) -> Parsed<Report> {
    let m = finite_length(input::module(ring, doc)?)?;
    let i = index_field(doc, "i")?;
    let big_n = ring.projective_dim();
    let e = horrocks_bundle(&m, i, big_n).map_err(|err| InputError::new("/i", err.to_string()))?;
    let w = window(&m.module, opts)?;
    let table = sheaf_cohomology_table(&e, w.clone());
    let expected: Vec<u64> = w.clone().map(|t| m.hilbert_function(t)).collect();
    let row_matches = table.row(i) == expected.as_slice();
    let others_vanish = (1..big_n).filter(|&j| j != i).all(|j| table.row(j).iter().all(|&x| x == 0));
    let passed = row_matches && others_vanish;
    let json = json!({
        "i": i,
        "n": big_n,
        "presentation": map_json(e.presentation()),
        "table": table,
        "expected_row": expected,
        "holds": passed,
    });
    let text = format!(
        "E = coker of\n{}\n{table}\nexpected row {i}: {expected:?}\nresult: {}\n",
        e.presentation(),
        if passed { "holds" } else { "FAILED" }
    );
    Ok(Report { passed, json, text })
}

fn lambda2<K: Field>(ring: &Ring<K>, doc: &Value) -> Parsed<Report> {
    let g = match input::complex(ring, doc)? {
        Ok(c) => c,
        Err(k) => return Err(InputError::new("/complex/maps", format!("not a complex: d_{k} composed with d_{} is nonzero", k + 1))),
    };
    let l = lambda2_complex(&g).map_err(|e| InputError::new("/complex", e.to_string()))?;
    let certify = |c: &FreeComplex<K>| {
        exact_except_top_certificate(c).map(|(cert, _)| cert).map_err(|e| InputError::new("/complex", e.to_string()))
    };
    let input_cert = certify(&g)?;
    let cert = certify(&l.complex)?;
    // exactness of G off its top must carry over to Λ²
    let passed = !input_cert.exact || cert.exact;
    let json = json!({
        "ranks": l.complex.ranks(),
        "twists": l.complex.twists(),
        "blocks": l.blocks,
        "complex": complex_json(&l.complex),
        "input_certificate": input_cert,
        "certificate": cert,
    });
    let text = format!("{}\n{}\ninput:\n{input_cert}Lambda2:\n{cert}", l.complex, l.complex.betti_table());
    Ok(Report { passed, json, text })
}

fn char2_check<K: Field>(ring: &Ring<K>, doc: &Value, opts: &Options) -> Parsed<Report> {
    let m = finite_length(input::module(ring, doc)?)?;
    let r = index_field(doc, "r")?;
    let w = window(&m.module, opts)?;
    let report =
        char2_max_cohom_check(&m, r, ring.projective_dim(), w).map_err(|e| InputError::new("/r", e.to_string()))?;
    Ok(Report { passed: report.holds, json: serde_json::to_value(&report).unwrap(), text: format!("{report}\n") })
}

fn run_random_skew<K: Field>(ring: &Ring<K>, doc: &Value, spec: &RingSpec, opts: &Options) -> Parsed<Report> {
    let e = input::twists(input::field(doc, "", "twists")?, "/twists")?;
    let t = input::int(input::field(doc, "", "t")?, "/t")?;
    let f = random_skew(ring, &e, t, opts.seed).map_err(|err| InputError::new("/twists", err.to_string()))?;
    let json = skew_json(spec, &f);
    let text = format!("e = {:?}, t = {}\n{}", f.e_twists(), f.t(), f.map());
    Ok(Report::pass(json, text))
}
