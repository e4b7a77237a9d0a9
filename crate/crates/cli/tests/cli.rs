use std::path::Path;
use std::process::{Command, Output};

fn resalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = resalg(&full);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)))
}

fn write_catalog(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{}.json", name.replace(':', "_")));
    let o = resalg(&["catalog", "get", name, "-o", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    path.to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_catalog(dir.path(), "H4");
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    doc["imp"][3][0] = 1.into();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let bad = bad.to_str().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"signature\": ").unwrap();
    let garbled = garbled.to_str().unwrap();

    assert_eq!(code(&resalg(&["validate", &good])), 0);
    assert_eq!(code(&resalg(&["validate", bad])), 1);
    assert_eq!(code(&resalg(&["classify", bad])), 3);
    assert_eq!(code(&resalg(&["classify", garbled])), 3);
    assert_eq!(code(&resalg(&["classify", "no-such-algebra"])), 3);
    assert_eq!(code(&resalg(&["frobnicate"])), 2);
    assert_eq!(code(&resalg(&["hom", "H4"])), 2);
    assert_eq!(code(&resalg(&["enumerate", "--size", "40"])), 2);
    assert_eq!(code(&resalg(&["paper-suite", "--only", "nonsense"])), 2);
    assert_eq!(code(&resalg(&["retract", "2", "H4"])), 0);
    assert_eq!(code(&resalg(&["retract", "H3", "I4"])), 1);
}

#[test]
fn validate_json_report() {
    let v = json(&["validate", "I4"]);
    assert_eq!(v["valid"], true);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn classify_h4() {
    let o = resalg(&["classify", "H4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for eq in ["PRELIN", "S", "B", "GODEL"] {
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().collect::<Vec<_>>() == [eq, "✓"]),
            "{eq}\n{text}"
        );
    }
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["INV", "✗"]));
    let v = json(&["classify", "H4"]);
    let varieties: Vec<&str> = v["varieties"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(varieties.contains(&"HL"));
    assert!(varieties.contains(&"SRL"));
    assert!(!varieties.contains(&"MV"));
    assert_eq!(v["linearly_ordered"], true);
}

#[test]
fn pinned_hom_search() {
    let o = resalg(&["hom", "H4", "H3", "--pin", "2=1", "--count"]);
    assert_eq!(stdout(&o).trim(), "0");
    assert_eq!(code(&o), 1);
    assert_eq!(
        code(&resalg(&["hom", "H4", "H3", "--pin", "2=1", "--exists"])),
        1
    );
    assert_eq!(code(&resalg(&["hom", "H4", "H3", "--exists"])), 0);
    assert_eq!(code(&resalg(&["hom", "H4", "H3", "--pin", "9=1"])), 2);
    let v = json(&["hom", "H3", "H4", "--mono"]);
    assert_eq!(v["count"], 2);
    assert_eq!(json(&["hom", "I4", "I4", "--iso"])["count"], 1);
}

#[test]
fn enumerate_counts() {
    let o = resalg(&["enumerate", "--size", "3", "--count-only"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "2");
    assert_eq!(
        json(&["enumerate", "--size", "4", "--count-only"])["count"],
        7
    );
    assert_eq!(
        json(&[
            "enumerate",
            "--size",
            "5",
            "--signature",
            "bounded_hoop",
            "--count-only"
        ])["count"],
        10
    );
    assert_eq!(
        json(&["enumerate", "--size", "5", "--chains", "--count-only"])["count"],
        22
    );
}

#[test]
fn enumerated_class_feeds_relative_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rl4");
    let o = resalg(&[
        "enumerate",
        "--size",
        "4",
        "--variety",
        "SRL",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let index: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
    let listed = index["algebras"].as_array().unwrap();
    assert_eq!(listed.len(), index["count"].as_u64().unwrap() as usize);
    for entry in listed {
        let file = out.join(entry["file"].as_str().unwrap());
        assert_eq!(code(&resalg(&["validate", file.to_str().unwrap()])), 0);
        assert!(entry["varieties"]
            .as_array()
            .unwrap()
            .iter()
            .any(|v| v == "SRL"));
    }
    let class = out.to_str().unwrap();
    let o = resalg(&["injective", "2", "--class", class]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relative to class"));
    let v = json(&["injective", "2", "--class", class]);
    assert_eq!(v["injective"], true);
    assert!(v["relative_to_class"].is_string());
}

#[test]
fn constructions_write_valid_documents() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, Vec<&str>); 4] = [
        ("diamond.json", vec!["diamond", "H3"]),
        ("product.json", vec!["product", "2", "L3"]),
        ("quotient.json", vec!["quotient", "I4", "--filter", "2,3"]),
        ("catalog.json", vec!["catalog", "get", "nm:5"]),
    ];
    for (file, args) in cases {
        let path = dir.path().join(file);
        let mut full = args.clone();
        full.extend(["-o", path.to_str().unwrap()]);
        assert_eq!(code(&resalg(&full)), 0, "{args:?}");
        assert_eq!(
            code(&resalg(&["validate", path.to_str().unwrap()])),
            0,
            "{args:?}"
        );
    }
    let diamond = dir.path().join("diamond.json");
    let v = json(&["validate", diamond.to_str().unwrap()]);
    assert_eq!(v["valid"], true);
    let product = dir.path().join("product.json");
    assert_eq!(
        json(&["classify", product.to_str().unwrap()])["linearly_ordered"],
        false
    );
    assert_eq!(code(&resalg(&["quotient", "I4", "--filter", "1,3"])), 2);
}

#[test]
fn structure_listings() {
    let filters = json(&["filters", "I4"]);
    assert_eq!(filters["filters"].as_array().unwrap().len(), 3);
    let maximal = json(&["filters", "I4", "--maximal"]);
    assert_eq!(maximal["filters"], serde_json::json!([[2, 3]]));
    let radical = json(&["radical", "I4"]);
    assert_eq!(radical["radical"], serde_json::json!([2, 3]));
    assert_eq!(radical["principal_unity"], 2);
    let subs = json(&["subalgebras", "2"]);
    assert_eq!(subs["subalgebras"], serde_json::json!([[0, 1]]));
    let list = json(&["catalog", "list"]);
    assert!(list.as_array().unwrap().iter().any(|e| e["name"] == "I6"));
}

#[test]
fn noncanonical_file_gets_a_notice() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.json");
    // H3 with the bottom and top indices swapped
    let text = r#"{"signature":"rl","size":3,
        "meet":[[0,1,2],[1,1,2],[2,2,2]],
        "join":[[0,0,0],[0,1,1],[0,1,2]],
        "prod":[[0,1,2],[1,1,2],[2,2,2]],
        "imp":[[0,1,2],[0,0,2],[0,0,0]],
        "bot":2,"top":0}"#;
    std::fs::write(&path, text).unwrap();
    let o = resalg(&["classify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("notice"));
}

#[test]
fn paper_suite_selection() {
    let o = resalg(&["paper-suite", "--only", "diamond"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("PASS 05"));
    assert!(text.contains("PASS 06"));
    assert!(text.contains("SKIP 01"));
    let v = json(&["paper-suite", "--only", "hoop-simple-mv"]);
    assert_eq!(v["passed"], false);
    assert_eq!(code(&resalg(&["paper-suite", "--only", "hoops"])), 1);
}

#[test]
fn thread_override_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_resalg"))
        .args(["enumerate", "--size", "4", "--count-only"])
        .env("RESALG_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "7");
}
