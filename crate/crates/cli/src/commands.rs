use std::io::Read;
use std::path::Path;

use colorideal::chordalgb::{
    basis_from_json, basis_to_json, count_colorings_chordal, extract_coloring,
};
use colorideal::graph::{perfect_elimination_order, EliminationOutcome};
use colorideal::nulla::{
    certificate_from_json, default_d_max, lift_certificate, nulla_search_with, report_to_json,
    verify_certificate, Certificate, SearchOptions, SearchOutcome,
};
use colorideal::oracle::{brute_force_colorings, has_long_induced_cycle, verify_groebner_basis};
use colorideal::{
    build_groebner_basis, build_ideal, check_coloring, parse_graph, random_chordal, BasisResult,
    BuildOutcome, Error, FieldSpec, Graph, GraphFormat, JSON_VERSION,
};
use serde_json::{json, Value};

use crate::{Cli, Colors, Command, Format, GraphSource, InputFormat};

pub struct Output {
    pub text: String,
    pub status: u8,
}

pub struct Failure {
    pub message: String,
    pub status: u8,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        status: 2,
    }
}

fn computation(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        status: 3,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. }
            | Error::NotPrime(_)
            | Error::ModulusTooLarge(_)
            | Error::CharacteristicDividesK { .. }
            | Error::InvalidK { .. }
            | Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::PrimeFieldRequired(_)
            | Error::InvalidCertificate(_) => 2,
            _ => 3,
        };
        Failure {
            message: e.to_string(),
            status,
        }
    }
}

type Res<T> = Result<T, Failure>;

fn read_input(path: &Path) -> Res<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn load_graph(src: &GraphSource) -> Res<Graph> {
    if let Some(spec) = &src.random_chordal {
        let (n, m) = spec
            .split_once(':')
            .and_then(|(n, m)| Some((n.parse::<u32>().ok()?, m.parse::<u32>().ok()?)))
            .ok_or_else(|| {
                usage(format!(
                    "--random-chordal expects N:MAXCLIQUE, got `{spec}`"
                ))
            })?;
        return Ok(random_chordal(n, m, src.seed));
    }
    let path = src
        .graph
        .as_deref()
        .ok_or_else(|| usage("no graph given"))?;
    let text = read_input(path)?;
    let format = match src.input_format {
        InputFormat::Auto => GraphFormat::detect(&text),
        InputFormat::Dimacs => GraphFormat::Dimacs,
        InputFormat::EdgeList => GraphFormat::EdgeList,
    };
    parse_graph(&text, format).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Res<Value> {
    serde_json::from_str(&read_input(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn colors(c: &Colors, field: FieldSpec) -> Res<u32> {
    if c.k < 2 {
        return Err(usage(format!("--k must be at least 2, got {}", c.k)));
    }
    field.check_k(c.k)?;
    Ok(c.k)
}

fn field(p: &str) -> Res<FieldSpec> {
    p.parse::<FieldSpec>()
        .map_err(|e| usage(format!("--p: {e}")))
}

fn render(format: Format, value: &Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n",
        Format::Text => text,
    }
}

fn done(cli: &Cli, value: Value, text: String, status: u8) -> Res<Output> {
    Ok(Output {
        text: render(cli.format, &value, text),
        status,
    })
}

/// Brute-force count when affordable, otherwise `None`.
fn oracle_count(g: &Graph, k: u32) -> Res<Option<u64>> {
    match brute_force_colorings(g, k, false) {
        Ok(e) => Ok(Some(e.count)),
        Err(Error::OracleTooLarge(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::CheckChordal { source } => check_chordal(cli, &load_graph(source)?),
        Command::Gb {
            colors: c,
            p,
            source,
        } => {
            let f = field(p)?;
            gb(cli, &load_graph(source)?, colors(c, f)?, f)
        }
        Command::Count { colors: c, source } => {
            count(cli, &load_graph(source)?, colors(c, FieldSpec::RATIONALS)?)
        }
        Command::Color { colors: c, source } => {
            color(cli, &load_graph(source)?, colors(c, FieldSpec::RATIONALS)?)
        }
        Command::Cert {
            colors: c,
            p,
            d_max,
            no_lift,
            source,
        } => {
            let f = field(p)?;
            if f.is_rational() {
                return Err(usage("certificate search needs a prime field"));
            }
            let k = colors(c, f)?;
            cert(
                cli,
                &load_graph(source)?,
                k,
                f,
                d_max.unwrap_or(default_d_max(k)),
                !no_lift,
            )
        }
        Command::VerifyCert { file } => verify_cert(cli, &read_json(file)?),
        Command::VerifyGb { file } => verify_gb(cli, &read_json(file)?),
        Command::OracleCount { colors: c, source } => {
            let g = load_graph(source)?;
            let k = colors(c, FieldSpec::RATIONALS)?;
            let e = brute_force_colorings(&g, k, false)?;
            let value = json!({
                "version": JSON_VERSION, "kind": "count", "method": "brute-force",
                "k": k, "graph": g, "count": e.count.to_string(),
            });
            done(cli, value, format!("{}\n", e.count), 0)
        }
    }
}

fn check_chordal(cli: &Cli, g: &Graph) -> Res<Output> {
    let (chordal, mut value, text) = match perfect_elimination_order(g) {
        EliminationOutcome::Order(peo) => {
            let text = format!("chordal; elimination order {:?}\n", peo.order());
            (true, json!({ "chordal": true, "peo": peo }), text)
        }
        EliminationOutcome::NotChordal { stuck } => {
            let text = format!("not chordal; no simplicial vertex among {stuck:?}\n");
            (false, json!({ "chordal": false, "stuck": stuck }), text)
        }
    };
    value["version"] = json!(JSON_VERSION);
    value["kind"] = json!("chordality");
    value["graph"] = json!(g);
    if cli.oracle {
        if g.n() > 16 {
            return Err(usage("--oracle chordality check is limited to 16 vertices"));
        }
        let agrees = chordal != has_long_induced_cycle(g);
        value["oracle"] = json!({ "induced_cycle_search_agrees": agrees });
        if !agrees {
            return Err(computation("elimination and induced-cycle search disagree"));
        }
    }
    done(cli, value, text, if chordal { 0 } else { 1 })
}

fn not_chordal(cli: &Cli, kind: &str, g: &Graph, k: u32) -> Res<Output> {
    let value = json!({ "version": JSON_VERSION, "kind": kind, "status": "not-chordal", "k": k, "graph": g });
    done(cli, value, "not chordal\n".into(), 1)
}

fn gb(cli: &Cli, g: &Graph, k: u32, f: FieldSpec) -> Res<Output> {
    let result = match build_groebner_basis(g, k, f)? {
        BuildOutcome::NotChordal => return not_chordal(cli, "groebner-basis", g, k),
        BuildOutcome::Result(r) => r,
    };
    let mut value = basis_to_json(g, k, f, &result);
    let text = match &result {
        BasisResult::Basis(b) => {
            let mut t = format!(
                "Gröbner basis over {f} under lex {:?}:\n",
                b.order.descending_variables()
            );
            for p in &b.polys {
                t.push_str(&format!("  {}\n", p.render(&b.order)));
            }
            t + &format!(
                "colorings: {}\n",
                value["dimension"].as_str().unwrap_or("?")
            )
        }
        BasisResult::Infeasible { witness } => format!(
            "infeasible: vertex {} has {} neighbours forming a clique; basis {{1}}\n",
            witness.vertex,
            witness.clique.len()
        ),
    };
    if cli.oracle {
        let doc = basis_from_json(&value)?;
        let v = verify_groebner_basis(g, k, f, &doc.polys, &doc.order)?;
        value["oracle"] =
            json!({ "buchberger_criterion": v.criterion, "dimension_matches_count": v.valid });
        if !v.valid {
            return Err(computation("basis failed the oracle check"));
        }
    }
    done(cli, value, text, if result.is_infeasible() { 1 } else { 0 })
}

fn count(cli: &Cli, g: &Graph, k: u32) -> Res<Output> {
    let n = match count_colorings_chordal(g, k) {
        Ok(n) => n,
        Err(Error::NotChordal) => return not_chordal(cli, "count", g, k),
        Err(e) => return Err(e.into()),
    };
    let mut value = json!({
        "version": JSON_VERSION, "kind": "count", "method": "chordal",
        "k": k, "graph": g, "count": n.to_string(),
    });
    if cli.oracle {
        let brute = oracle_count(g, k)?
            .ok_or_else(|| usage("graph too large for the brute-force oracle"))?;
        value["oracle"] = json!({ "brute_force": brute.to_string() });
        if n != brute.into() {
            return Err(computation(format!(
                "chordal count {n} disagrees with brute force {brute}"
            )));
        }
    }
    done(cli, value, format!("{n}\n"), 0)
}

fn color(cli: &Cli, g: &Graph, k: u32) -> Res<Output> {
    let result = match build_groebner_basis(g, k, FieldSpec::RATIONALS)? {
        BuildOutcome::NotChordal => return not_chordal(cli, "coloring", g, k),
        BuildOutcome::Result(r) => r,
    };
    let coloring = extract_coloring(&result, k);
    let mut value = json!({
        "version": JSON_VERSION, "kind": "coloring", "k": k, "graph": g,
        "status": if coloring.is_some() { "colored" } else { "infeasible" },
        "coloring": coloring,
    });
    let text = match &coloring {
        Some(c) => c.iter().map(|(v, col)| format!("{v} {col}\n")).collect(),
        None => format!("not {k}-colorable\n"),
    };
    if cli.oracle {
        let proper = match &coloring {
            Some(c) => check_coloring(g, k, c)?,
            None => oracle_count(g, k)? == Some(0),
        };
        value["oracle"] = json!({ "confirmed": proper });
        if !proper {
            return Err(computation("extracted answer failed the oracle check"));
        }
    }
    done(cli, value, text, if coloring.is_some() { 0 } else { 1 })
}

fn cert_text(cert: &Certificate) -> String {
    let mut t = format!(
        "certificate of degree {} over {} for k = {}\n",
        cert.degree, cert.field, cert.k
    );
    for ((u, v), beta) in &cert.edge_coeffs {
        t.push_str(&format!("  edge {u}-{v}: {beta}\n"));
    }
    if let Some(gammas) = &cert.vertex_coeffs {
        for (v, gamma) in gammas {
            if !gamma.is_zero() {
                t.push_str(&format!("  vertex {v}: {gamma}\n"));
            }
        }
    }
    t
}

fn cert(cli: &Cli, g: &Graph, k: u32, f: FieldSpec, d_max: u32, lift: bool) -> Res<Output> {
    let mut report = nulla_search_with(g, k, f, d_max, &SearchOptions::default(), &mut |a| {
        eprintln!(
            "degree {}: {} ({} columns, rank {})",
            a.degree,
            if a.feasible { "feasible" } else { "infeasible" },
            a.columns,
            a.rank
        );
    })?;
    if lift {
        if let SearchOutcome::Certificate(c) = &mut report.outcome {
            *c = lift_certificate(c, g, k)?;
        }
    }
    let mut value = report_to_json(g, k, f, &report);
    let text = match report.certificate() {
        Some(c) => cert_text(c),
        None => format!("no certificate of degree at most {d_max}\n"),
    };
    if cli.oracle {
        let ideal = build_ideal(g, k, f)?;
        let verified = report
            .certificate()
            .into_iter()
            .all(|c| verify_certificate(c, &ideal));
        let colorings = oracle_count(g, k)?;
        value["oracle"] =
            json!({ "verified": verified, "brute_force_count": colorings.map(|c| c.to_string()) });
        if !verified || (report.certificate().is_some() && colorings.is_some_and(|c| c > 0)) {
            return Err(computation("certificate failed the oracle check"));
        }
    }
    done(
        cli,
        value,
        text,
        if report.certificate().is_some() { 0 } else { 1 },
    )
}

fn verify_cert(cli: &Cli, doc: &Value) -> Res<Output> {
    let (g, cert) = certificate_from_json(doc)?;
    let ideal = build_ideal(&g, cert.k, cert.field)?;
    let quotient = verify_certificate(
        &Certificate {
            vertex_coeffs: None,
            ..cert.clone()
        },
        &ideal,
    );
    let full = cert
        .vertex_coeffs
        .as_ref()
        .map(|_| verify_certificate(&cert, &ideal));
    let valid = quotient && full.unwrap_or(true);
    let value = json!({
        "version": JSON_VERSION, "kind": "verification", "subject": "certificate",
        "valid": valid, "quotient_identity": quotient, "full_identity": full, "degree": cert.degree,
    });
    let text = format!("{}\n", if valid { "valid" } else { "INVALID" });
    done(cli, value, text, if valid { 0 } else { 1 })
}

fn verify_gb(cli: &Cli, doc: &Value) -> Res<Output> {
    let doc = basis_from_json(doc)?;
    let v = verify_groebner_basis(&doc.graph, doc.k, doc.field, &doc.polys, &doc.order)?;
    let value = json!({
        "version": JSON_VERSION, "kind": "verification", "subject": "groebner-basis",
        "valid": v.valid, "buchberger_criterion": v.criterion, "generators_reduce": v.generators_reduce,
        "standard_monomials": v.standard_monomials, "colorings": v.colorings,
    });
    let text = format!(
        "{}: criterion={} generators reduce={} standard monomials={:?} colorings={}\n",
        if v.valid { "valid" } else { "INVALID" },
        v.criterion,
        v.generators_reduce,
        v.standard_monomials,
        v.colorings
    );
    done(cli, value, text, if v.valid { 0 } else { 1 })
}
