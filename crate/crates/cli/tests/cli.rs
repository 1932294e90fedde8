use std::fs;
use std::process::{Command, Output};

use zerobound::report::{parse_csv_report, parse_json_report, Report};

const TABLE1: &str = "1, 5/4, 4/3, 1, 2, 3, 4";
const H1: &str = "1, 0, 1/6, 0, 1/5, 0, 1/4";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerobound"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// CSV rows keyed by column name.
fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let columns: Vec<&str> = Report::CSV_HEADER.split(',').collect();
    parse_csv_report(text)
        .expect("valid report csv")
        .into_iter()
        .map(|fields| columns.iter().map(|c| c.to_string()).zip(fields).collect())
        .collect()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn every_bundled_fixture_passes() {
    let o = run(&["fixture", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for name in [
        "table1", "table2", "table3", "table4", "table5", "h1", "h2", "h3",
    ] {
        assert!(
            text.contains(&format!("fixture {name}: PASS")),
            "{name} missing"
        );
    }
}

#[test]
fn unknown_fixture_is_a_usage_error() {
    let o = run(&["fixture", "table9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("table9"));
}

#[test]
fn malformed_coefficient_is_named() {
    let o = run(&["compare", "--poly", "1, 2, 3x, 4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3x"), "{}", stderr(&o));

    let o = run(&["compare", "--poly", "0, 1, 2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["roots", "--poly", "1, inf"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strict_mw_refuses_an_unguarded_polynomial() {
    let o = run(&["compare", "--poly", H1, "--methods", "mw", "--strict-mw"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("refused"));

    let o = run(&["compare", "--poly", H1, "--methods", "mw"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("conditional"));
}

#[test]
fn json_output_round_trips() {
    let o = run(&[
        "compare",
        "--poly",
        TABLE1,
        "--format",
        "json",
        "--oracle",
        "--variant",
        "kittaneh=plus_one",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = parse_json_report(&text).expect("valid report json");
    let cor1 = report
        .rows
        .iter()
        .find(|r| r.method == "corollary1")
        .expect("corollary-1 row");
    assert_eq!(cor1.value, "3.94150880219");
    let k = report.rows.iter().find(|r| r.method == "kittaneh").unwrap();
    assert_eq!(k.variant, "plus_one");
    // numpy.roots agrees to 14 digits: 1.26628701785216
    assert_eq!(report.oracle_max_modulus, "1.26628701785");
}

#[test]
fn csv_output_has_the_documented_columns() {
    let o = run(&["compare", "--poly", TABLE1, "--format", "csv", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, Report::CSV_HEADER);
    assert_eq!(header.split(',').count(), 11);
    for line in lines {
        assert_eq!(line.split(',').count(), 11, "{line}");
    }
    let rows = csv_rows(&text);
    let cauchy = rows.iter().find(|r| r["method"] == "cauchy").unwrap();
    assert_eq!(cauchy["value"], "5.00000000000");
    assert_eq!(cauchy["verdict"], "holds");
    let rect = rows
        .iter()
        .find(|r| r["method"] == "theorem3-rect")
        .unwrap();
    assert!(!rect["re_hi"].is_empty() && !rect["im_lo"].is_empty());
}

#[test]
fn config_file_sets_defaults_and_flags_override_it() {
    let dir = std::env::temp_dir().join(format!("zerobound-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bounds.conf");
    fs::write(
        &path,
        "# presets\nmethods = linden,kittaneh\nlinden = table\nformat = csv\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();

    let o = run(&["compare", "--poly", TABLE1, "--config", cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    let linden = rows.iter().find(|r| r["method"] == "linden").unwrap();
    assert_eq!(linden["variant"], "table");
    assert_eq!(linden["value"], "5.84540884909");

    let o = run(&[
        "compare",
        "--poly",
        TABLE1,
        "--config",
        cfg,
        "--variant",
        "linden=printed",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = parse_json_report(&stdout(&o)).unwrap();
    assert_eq!(
        report
            .rows
            .iter()
            .find(|r| r.method == "linden")
            .unwrap()
            .variant,
        "printed"
    );

    fs::write(&path, "linden = sideways\n").unwrap();
    let o = run(&["compare", "--poly", TABLE1, "--config", cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sideways"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_output_ranks_the_block_bound_first_on_table_one() {
    let o = run(&[
        "compare",
        "--poly",
        TABLE1,
        "--oracle",
        "--variant",
        "linden=table",
        "--variant",
        "kittaneh=plus_one",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("corollary1")).unwrap();
    assert!(row.contains("3.941508802"), "{row}");
    assert!(row.split_whitespace().any(|t| t == "1"), "{row}");
}

#[test]
fn roots_are_listed_largest_first() {
    let o = run(&["roots", "--poly", "1, 0, -1/2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let moduli: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(moduli.len(), 2);
    assert!((moduli[0] - 0.5f64.sqrt()).abs() < 1e-11);
}
