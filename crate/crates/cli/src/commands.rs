use icis::bounds::bound_table;
use icis::conjecture::{
    factorial_product_check, identity_n1, identity_n2, identity_r1, ordering_symbol, search,
    trace_ratio, verify, BoundCheck, SearchMode, SearchParams, VerdictReport,
};
use icis::invariants::SMOOTHNESS_ASSUMPTION;
use icis::selftest;
use icis::{DegreeSpec, Result};

use crate::report::{approx, Cell, ReportDocument};

pub const INVARIANT_COLUMNS: [&str; 9] = [
    "n",
    "r",
    "degrees",
    "mu",
    "pg",
    "chi",
    "strong_verdict",
    "new_verdict",
    "bound_value",
];

pub fn join_degrees(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Builds the spec, sorting degrees and noting when the input order changed.
fn input_spec(doc: &mut ReportDocument, n: u32, degrees: &[u32]) -> Result<DegreeSpec> {
    let spec = DegreeSpec::new(n, degrees.to_vec())?;
    if !spec.is_sorted() {
        doc.note(format!(
            "degrees sorted: input {} echoed as {}",
            join_degrees(degrees),
            join_degrees(spec.sorted().degrees())
        ));
    }
    Ok(spec.sorted())
}

fn invariant_row(v: &VerdictReport, bound: &BoundCheck) -> Vec<Cell> {
    let spec = v.spec();
    vec![
        spec.n().into(),
        spec.r().into(),
        join_degrees(spec.degrees()).into(),
        v.mu().into(),
        v.pg().into(),
        (&v.invariants.chi).into(),
        v.strong_class.as_str().into(),
        v.conjecture_class.as_str().into(),
        (&bound.bound).into(),
    ]
}

fn reduction_note(doc: &mut ReportDocument, v: &VerdictReport) {
    if v.invariants.was_reduced() {
        doc.note(format!(
            "reduced: degree-1 entries removed, computing on degrees {}",
            join_degrees(v.spec().degrees())
        ));
    }
}

fn method_meta(doc: &mut ReportDocument, v: &VerdictReport) {
    for (m, val) in &v.invariants.milnor_values {
        doc.meta(format!("mu.{}", m.name()), val);
    }
    for (m, val) in &v.invariants.genus_values {
        doc.meta(format!("pg.{}", m.name()), val);
    }
    if let Some(val) = &v.invariants.closed_form_genus {
        doc.meta("pg.closed_form", val);
    }
    doc.meta("methods_agree", v.invariants.agreement);
}

pub fn invariants(n: u32, degrees: &[u32]) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(
        format!("invariants --n {n} --degrees {}", join_degrees(degrees)),
        &INVARIANT_COLUMNS,
    );
    let spec = input_spec(&mut doc, n, degrees)?;
    let v = verify(&spec)?;
    reduction_note(&mut doc, &v);
    method_meta(&mut doc, &v);
    doc.meta("bound_name", v.conjecture.name.clone());
    doc.meta("c_coefficient", &v.c_bound.coefficient);
    doc.note(SMOOTHNESS_ASSUMPTION);
    doc.row(invariant_row(&v, &v.conjecture));
    Ok(doc)
}

pub fn bounds(n_max: u32, r_max: u32, decimal: bool) -> Result<ReportDocument> {
    let mut columns = vec!["n", "r", "c", "floor", "above_floor", "non_increasing"];
    if decimal {
        columns.push("c_approx");
    }
    let mut doc = ReportDocument::new(
        format!(
            "bounds --n-max {n_max} --r-max {r_max}{}",
            if decimal { " --decimal" } else { "" }
        ),
        &columns,
    );
    if n_max == 0 || r_max == 0 {
        return Err(icis::Error::InvalidSpec(
            "n-max and r-max must be at least 1".into(),
        ));
    }
    doc.meta("grid", format!("1<=n<={n_max} 1<=r<={r_max}"));
    let table = bound_table(n_max, r_max)?;
    let mut all_rows_monotone = true;
    for row in table.chunks(r_max as usize) {
        let mut row_monotone = true;
        for (i, cell) in row.iter().enumerate() {
            let non_increasing = i == 0 || cell.value <= row[i - 1].value;
            row_monotone &= non_increasing;
            let mut cells: Vec<Cell> = vec![
                cell.n.into(),
                cell.r.into(),
                (&cell.value).into(),
                cell.floor().into(),
                cell.above_floor().into(),
                non_increasing.into(),
            ];
            if decimal {
                cells.push(approx(&cell.value).into());
            }
            doc.row(cells);
        }
        doc.meta(format!("row_non_increasing.n{}", row[0].n), row_monotone);
        all_rows_monotone &= row_monotone;
    }
    doc.meta("all_rows_non_increasing", all_rows_monotone);
    if decimal {
        doc.note("c_approx is a rounded 6-digit decimal; exact values are in column c");
    }
    Ok(doc)
}

fn check_row(name: &str, check: &BoundCheck, class: Option<&str>) -> Vec<Cell> {
    vec![
        name.into(),
        (&check.lhs).into(),
        (&check.coefficient).into(),
        (&check.bound).into(),
        ordering_symbol(check.comparison).into(),
        check.strict.into(),
        check.holds().into(),
        class.unwrap_or("").into(),
    ]
}

pub fn verify_cmd(n: u32, degrees: &[u32]) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(
        format!("verify --n {n} --degrees {}", join_degrees(degrees)),
        &[
            "check",
            "lhs",
            "coefficient",
            "bound_value",
            "comparison",
            "strict",
            "holds",
            "classification",
        ],
    );
    let spec = input_spec(&mut doc, n, degrees)?;
    let v = verify(&spec)?;
    reduction_note(&mut doc, &v);
    let reduced = v.spec().clone();
    doc.meta("n", reduced.n());
    doc.meta("r", reduced.r());
    doc.meta("degrees", join_degrees(reduced.degrees()));
    doc.meta("mu", v.mu());
    doc.meta("pg", v.pg());
    doc.meta("chi", &v.invariants.chi);
    method_meta(&mut doc, &v);

    match reduced.n() {
        1 => {
            doc.meta("identity_n1", identity_n1(&reduced)?);
        }
        2 => {
            let id = identity_n2(&reduced)?;
            doc.meta("identity_n2", id.holds);
            doc.meta("identity_n2.e", &id.e);
        }
        _ => {}
    }
    if reduced.r() == 1 {
        doc.meta(
            "identity_r1",
            identity_r1(reduced.n(), reduced.degrees()[0])?,
        );
    }
    if reduced.n() >= 2 {
        let rep = factorial_product_check(&reduced)?;
        doc.meta("factorial_product.min", &rep.min_product);
        doc.meta("factorial_product.holds", rep.holds());
        if let Some(strict) = rep.balanced_strict {
            doc.meta("factorial_product.balanced_strict", strict);
        }
    }
    for check in [&v.strong, &v.conjecture, &v.c_bound] {
        if check.is_equality() && !check.trivial {
            doc.note(format!("{}: equality holds exactly", check.name));
        }
    }
    doc.note(SMOOTHNESS_ASSUMPTION);

    doc.row(check_row(
        "strong-durfee",
        &v.strong,
        Some(v.strong_class.as_str()),
    ));
    let conj_name = v.conjecture.name.clone();
    doc.row(check_row(
        &conj_name,
        &v.conjecture,
        Some(v.conjecture_class.as_str()),
    ));
    doc.row(check_row("c-bound", &v.c_bound, None));
    Ok(doc)
}

type BoundOf = fn(&VerdictReport) -> &BoundCheck;

pub fn search_cmd(params: &SearchParams) -> Result<ReportDocument> {
    let mode_flag = match params.mode {
        SearchMode::EqualDegrees => "--equal",
        SearchMode::FullGrid => "--full",
    };
    let mut columns = INVARIANT_COLUMNS.to_vec();
    columns.push("kind");
    let mut doc = ReportDocument::new(
        format!(
            "search --n {} --r {} --p {}..{} {mode_flag}",
            params.n, params.r, params.p_min, params.p_max
        ),
        &columns,
    );
    let result = search(params)?;
    doc.meta("grid", params.describe());
    doc.meta("evaluated", result.evaluated);
    doc.meta("strong_violations", result.strong_violations.len());
    if params.n == 2 {
        doc.meta("c_bound_violations", result.c_bound_violations.len());
    }
    doc.meta("conjecture_violations", result.conjecture_violations.len());
    match result.minimal_violation() {
        Some(v) => {
            doc.meta("minimal_violation", join_degrees(v.spec().degrees()));
            doc.meta("minimal_violation.mu", v.mu());
            doc.meta("minimal_violation.pg", v.pg());
            doc.meta("minimal_violation.bound", &v.strong.bound);
        }
        None => {
            doc.meta("minimal_violation", "none");
        }
    }
    let groups: [(&str, &Vec<VerdictReport>, BoundOf); 3] = [
        ("strong-durfee", &result.strong_violations, |v| &v.strong),
        ("c-bound", &result.c_bound_violations, |v| &v.c_bound),
        ("new-conjecture", &result.conjecture_violations, |v| {
            &v.conjecture
        }),
    ];
    for (kind, list, bound) in groups {
        for v in list.iter() {
            let mut row = invariant_row(v, bound(v));
            row.push(kind.into());
            doc.row(row);
        }
    }
    Ok(doc)
}

pub fn trace_cmd(n: u32, r: u32, degrees: &[u32], decimal: bool) -> Result<ReportDocument> {
    let mut columns = vec!["p", "mu", "pg", "ratio", "limit", "deviation"];
    if decimal {
        columns.extend(["ratio_approx", "deviation_approx"]);
    }
    let mut doc = ReportDocument::new(
        format!(
            "trace --n {n} --r {r} --p {}{}",
            join_degrees(degrees),
            if decimal { " --decimal" } else { "" }
        ),
        &columns,
    );
    let trace = trace_ratio(n, r, degrees)?;
    doc.meta("limit", &trace.limit);
    doc.meta(
        "deviations_strictly_decreasing",
        trace.deviations_strictly_decreasing(),
    );
    if !trace.excluded.is_empty() {
        doc.meta("excluded_pg_zero", join_degrees(&trace.excluded));
    }
    for pt in &trace.points {
        let mut row: Vec<Cell> = vec![
            pt.p.into(),
            (&pt.mu).into(),
            (&pt.pg).into(),
            (&pt.ratio).into(),
            (&trace.limit).into(),
            (&pt.deviation).into(),
        ];
        if decimal {
            row.push(approx(&pt.ratio).into());
            row.push(approx(&pt.deviation).into());
        }
        doc.row(row);
    }
    if decimal {
        doc.note("*_approx columns are rounded 6-digit decimals; exact values are authoritative");
    }
    Ok(doc)
}

/// Returns the document and whether every suite passed.
pub fn selftest_cmd(order: usize) -> (ReportDocument, bool) {
    let mut doc = ReportDocument::new("selftest", &["suite", "cases", "failures", "passed"]);
    doc.meta("dominance_order", order);
    let outcomes = selftest::run_all(order);
    let mut ok = true;
    for s in &outcomes {
        ok &= s.passed();
        doc.row(vec![
            s.name.into(),
            s.cases.into(),
            s.failures.into(),
            s.passed().into(),
        ]);
        for ex in &s.examples {
            doc.note(format!("{}: failed {ex}", s.name));
        }
    }
    doc.meta("all_passed", ok);
    (doc, ok)
}
