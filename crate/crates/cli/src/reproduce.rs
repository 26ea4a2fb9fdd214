//! Re-runs the reference MDS/AMDS tables and covering-radius examples
//! with cross-validation, reporting expected against found.

use std::io::Write;

use serde_json::{json, Value};

use tgrs_core::covering::{self, CosetTable};
use tgrs_core::etgrs::{self, build_params, EtgrsTemplate, ScanOptions, ScanTarget};
use tgrs_core::report::SCHEMA;
use tgrs_core::{Element, Field};

use crate::{Failure, Format, Outcome, ReproduceTarget, EXIT_OK};

struct ScanRow {
    name: &'static str,
    field: &'static str,
    k: usize,
    h: usize,
    alpha: &'static str,
    pairs: &'static str,
    /// The literal list depends on the field representation.
    literal_is_warning: bool,
}

const TABLE1: [ScanRow; 3] = [
    ScanRow {
        name: "q=11 n=6 k=3 h=1",
        field: "11",
        k: 3,
        h: 1,
        alpha: "0,1,2,3,4,5",
        pairs: "4,7",
        literal_is_warning: false,
    },
    ScanRow {
        name: "q=16 n=7 k=4 h=2",
        field: "2^4",
        k: 4,
        h: 2,
        alpha: "0,g^1,g^2,g^4,g^6,g^7,g^13",
        pairs: "g^1,g^7;g^2,g^5;g^12,g^1",
        literal_is_warning: true,
    },
    ScanRow {
        name: "q=19 n=8 k=5 h=0",
        field: "19",
        k: 5,
        h: 0,
        alpha: "3,4,5,6,13,14,15,16",
        pairs: "15,6;15,18",
        literal_is_warning: false,
    },
];

const TABLE2: [ScanRow; 3] = [
    ScanRow {
        name: "q=7 n=5 k=3 h=0",
        field: "7",
        k: 3,
        h: 0,
        alpha: "2,3,4,5,6",
        pairs: "2,1;2,2;2,3;2,4;2,6;3,1;3,2;3,3;3,4;3,5;4,1;4,2;4,4;4,5;4,6;5,1;5,2;5,4;5,5;5,6;6,1;6,2;6,3;6,4;6,6",
        literal_is_warning: false,
    },
    ScanRow {
        name: "q=5 n=5 k=3 h=1",
        field: "5",
        k: 3,
        h: 1,
        alpha: "0,1,2,3,4",
        pairs: "1,1;1,2;1,4;2,2;2,3;2,4;3,1;3,2;3,3;4,1;4,3;4,4",
        literal_is_warning: false,
    },
    ScanRow {
        name: "q=8 n=6 k=4 h=2",
        field: "2^3",
        k: 4,
        h: 2,
        alpha: "0,g^0,g^1,g^2,g^3,g^5",
        pairs: "g^0,g^1;g^0,g^2;g^0,g^3;g^0,g^4;g^0,g^5;g^0,g^6;\
                g^2,g^0;g^2,g^1;g^2,g^2;g^2,g^3;g^2,g^5;g^2,g^6;\
                g^3,g^0;g^3,g^1;g^3,g^3;g^3,g^5;\
                g^4,g^0;g^4,g^2;g^4,g^3;g^4,g^5;g^4,g^6;\
                g^5,g^0;g^5,g^1;g^5,g^2;g^5,g^4;g^5,g^5;g^5,g^6;\
                g^6,g^0;g^6,g^1;g^6,g^2;g^6,g^3;g^6,g^4;g^6,g^6",
        literal_is_warning: true,
    },
];

struct HoleRow {
    name: &'static str,
    field: &'static str,
    k: usize,
    h: usize,
    alpha: &'static str,
    a: &'static str,
    b: &'static str,
    delta: &'static str,
    eta: &'static str,
    x: &'static str,
    rho: usize,
}

const SEC5: [HoleRow; 4] = [
    HoleRow {
        name: "GF(13) h=1",
        field: "13",
        k: 3,
        h: 1,
        alpha: "1,2,3,7,8,9",
        a: "2",
        b: "7",
        delta: "2",
        eta: "9",
        x: "1,8,1,5,5,1,2,7",
        rho: 5,
    },
    HoleRow {
        name: "GF(13) h=0",
        field: "13",
        k: 3,
        h: 0,
        alpha: "2,3,6,8,9,10",
        a: "0",
        b: "1",
        delta: "2",
        eta: "8",
        x: "8,1,8,5,1,12,0,1",
        rho: 5,
    },
    HoleRow {
        name: "GF(7) AMDS",
        field: "7",
        k: 3,
        h: 1,
        alpha: "1,2,4,5,6",
        a: "6",
        b: "1",
        delta: "3",
        eta: "2",
        x: "1,1,1,6,6,6,1",
        rho: 4,
    },
    HoleRow {
        name: "GF(8) AMDS",
        field: "2^3",
        k: 5,
        h: 0,
        alpha: "g^0,g^1,g^3,g^4,g^5,g^6,0",
        a: "g^3",
        b: "g^2",
        delta: "g^0",
        eta: "g^5",
        x: "g^0,g^5,g^1,g^6,g^4,g^2,0,g^3,g^2",
        rho: 4,
    },
];

fn parse_pairs(f: &Field, text: &str) -> Outcome<Vec<(Element, Element)>> {
    text.split(';')
        .map(|p| {
            let (a, b) = p.split_once(',').expect("pair has two entries");
            Ok((f.parse(a.trim())?, f.parse(b.trim())?))
        })
        .collect()
}

fn format_pairs(f: &Field, pairs: &[(Element, Element)]) -> Value {
    json!(pairs
        .iter()
        .map(|&(a, b)| [f.format(a), f.format(b)])
        .collect::<Vec<_>>())
}

fn scan_row(row: &ScanRow, target: ScanTarget, threads: Option<usize>) -> Outcome<(Value, bool)> {
    let f = Field::from_description(row.field)?;
    let t = EtgrsTemplate::new(&f, row.k, row.h, f.parse_list(row.alpha)?, None)?;
    let result = etgrs::scan(
        &t,
        target,
        ScanOptions {
            cross_validate: true,
            threads,
        },
    )?;
    let found: Vec<(Element, Element)> = result.hits.iter().map(|h| (h.eta, h.delta)).collect();
    let mut expected = parse_pairs(&f, row.pairs)?;
    expected.sort_by_key(|&(a, b)| (f.notation_key(a), f.notation_key(b)));
    let count_ok = found.len() == expected.len();
    let literal_ok = found == expected;
    let mut warnings = Vec::new();
    if !literal_ok && row.literal_is_warning {
        warnings.push("literal pair list differs under this field representation".to_string());
    }
    let pass = count_ok && (literal_ok || row.literal_is_warning);
    let value = json!({
        "name": row.name,
        "field_description": f.description(),
        "scanned": result.scanned,
        "expected_count": expected.len(),
        "found_count": found.len(),
        "expected_pairs": format_pairs(&f, &expected),
        "found_pairs": format_pairs(&f, &found),
        "pass": pass,
        "warnings": warnings,
    });
    Ok((value, pass))
}

fn hole_row(row: &HoleRow) -> Outcome<(Value, bool)> {
    let f = Field::from_description(row.field)?;
    let alpha = f.parse_list(row.alpha)?;
    let n = alpha.len();
    let p = build_params(
        &f,
        n,
        row.k,
        row.h,
        alpha,
        vec![Element::ONE; n],
        f.parse(row.eta)?,
        f.parse(row.delta)?,
    )?;
    let (a, b) = (f.parse(row.a)?, f.parse(row.b)?);
    let x = f.parse_list(row.x)?;
    let theorem = etgrs::deep_hole_check(&p, a, b)?;
    let code = p.code();
    let radius = CosetTable::new(&code)?.covering_radius();
    let bfs = covering::is_deep_hole(&code, &x)?;
    let pass = theorem.x == x
        && theorem.report.verdict
        && theorem.predicted_radius == Some(row.rho)
        && radius == row.rho
        && bfs.is_deep_hole
        && bfs.augmented_mds == Some(true);
    let value = json!({
        "name": row.name,
        "field_description": f.description(),
        "code_class": theorem.code_class.as_str(),
        "x": x.iter().map(|&e| f.format(e)).collect::<Vec<_>>(),
        "theorem_verdict": theorem.report.verdict,
        "expected_radius": row.rho,
        "bfs_radius": radius,
        "coset_weight": bfs.coset_weight,
        "augmented_mds": bfs.augmented_mds,
        "pass": pass,
    });
    Ok((value, pass))
}

pub(crate) fn run(
    target: ReproduceTarget,
    format: Format,
    threads: Option<usize>,
    out: &mut dyn Write,
) -> Outcome<i32> {
    let (name, rows): (&str, Vec<(Value, bool)>) = match target {
        ReproduceTarget::Table1 => (
            "table1",
            TABLE1
                .iter()
                .map(|r| scan_row(r, ScanTarget::Mds, threads))
                .collect::<Outcome<_>>()?,
        ),
        ReproduceTarget::Table2 => (
            "table2",
            TABLE2
                .iter()
                .map(|r| scan_row(r, ScanTarget::Amds, threads))
                .collect::<Outcome<_>>()?,
        ),
        ReproduceTarget::Sec5 => ("sec5", SEC5.iter().map(hole_row).collect::<Outcome<_>>()?),
    };
    let pass = rows.iter().all(|(_, p)| *p);
    let rows: Vec<Value> = rows.into_iter().map(|(v, _)| v).collect();
    match format {
        Format::Json => {
            let report = json!({ "schema": SCHEMA, "target": name, "pass": pass, "rows": rows });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("value serializes")
            )?;
        }
        Format::Csv => {
            writeln!(out, "name,expected,found,pass")?;
            for r in &rows {
                let (expected, found) = match target {
                    ReproduceTarget::Sec5 => (&r["expected_radius"], &r["bfs_radius"]),
                    _ => (&r["expected_count"], &r["found_count"]),
                };
                writeln!(
                    out,
                    "{},{},{},{}",
                    r["name"].as_str().unwrap_or(""),
                    expected,
                    found,
                    r["pass"]
                )?;
            }
        }
    }
    if pass {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Mismatch(format!(
            "reproduce {name}: expected values not matched"
        )))
    }
}
