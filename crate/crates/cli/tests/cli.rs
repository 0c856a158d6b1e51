use std::process::{Command, Output};

fn minwin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minwin")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = minwin(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    minwin(args).status.code().unwrap()
}

#[test]
fn count() {
    assert_eq!(stdout(&["count", "9", "3", "--no-null", "--no-veto"]), "14\n");
    assert_eq!(stdout(&["count", "9", "3"]), "146\n");
    assert_eq!(stdout(&["count", "3", "2", "--no-null", "--no-veto"]), "0\n");
    for method in ["polya", "recursive", "enumerate"] {
        assert_eq!(stdout(&["count", "20", "5", "--method", method]), "19791\n");
    }
    assert_eq!(stdout(&["count", "40", "3", "--no-veto"]), stdout(&["count", "40", "3", "--no-veto", "--method", "polya"]));
}

#[test]
fn table() {
    let csv = stdout(&["table", "--max-n", "20", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 21);
    assert_eq!(lines[0], "n,t=1,t=2,t=3,t=4,t=5,t=6,t=7,t=8,t=9,t=10,t=11,total");
    assert!(lines[20].ends_with(",60742"));
    assert_eq!(stdout(&["table", "--max-n", "1"]), "n,t=1,total\n1,1,1\n");
    assert_eq!(
        stdout(&["table", "--max-n", "2", "--format", "json"]),
        "{\"rows\":[{\"n\":1,\"counts\":[1],\"total\":1},{\"n\":2,\"counts\":[2,1],\"total\":3}]}\n"
    );
    let md = stdout(&["table", "--max-n", "3", "--format", "markdown"]);
    assert_eq!(md.lines().nth(4), Some("| 3 | 3 | 4 | 7 |"));
    assert_eq!(code(&["table", "--format", "bfile"]), 1);
    assert_eq!(code(&["table", "--max-n", "0"]), 1);
}

#[test]
fn list() {
    let out = stdout(&["list", "9", "3", "--no-null", "--no-veto"]);
    assert_eq!(out.lines().count(), 14);
    assert_eq!(out.lines().next(), Some(r#"{"classes":[5,2,2],"minwin":[4,1,1]}"#));
    assert_eq!(stdout(&["list", "2", "2"]), "{\"classes\":[1,1],\"minwin\":[1,0]}\n");
    assert_eq!(stdout(&["list", "3", "2", "--no-null", "--no-veto"]), "");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["list", "4", "2", "--format", "json"])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 10);
}

#[test]
fn generating_functions() {
    assert_eq!(stdout(&["gf", "2", "--terms", "9"]), "0,0,1,4,10,18,31,46,68,92\n");
    assert!(stdout(&["gf", "3", "--terms", "9"]).ends_with(",146\n"));
    assert_eq!(stdout(&["gf", "1", "--terms", "5"]), "0,1,2,3,4,5\n");
    assert!(stdout(&["gf", "6", "--terms", "20"]).ends_with(",10478\n"));
    assert_eq!(code(&["gf", "0"]), 1);
}

#[test]
fn dimension() {
    assert_eq!(stdout(&["dim", "--classes", "5,2,2", "--minwin", "4,1,1"]), "3\n");
    assert_eq!(stdout(&["dim", "--classes", "2,2", "--minwin", "2,0"]), "1\n");
    assert_eq!(stdout(&["dim", "--classes", "4", "--minwin", "4"]), "1\n");
    assert_eq!(stdout(&["dim", "--classes", "2,5,2", "--minwin", "1,4,1"]), "3\n");
    assert_eq!(stdout(&["dim", "--spec", r#"{"classes":[3,2],"minwin":[3,1]}"#]), "1\n");

    let out = stdout(&["dim", "--classes", "5,2,2", "--minwin", "4,1,1", "--certify"]);
    let (first, rest) = out.split_once('\n').unwrap();
    assert_eq!(first, "3");
    let cert: serde_json::Value = serde_json::from_str(rest).unwrap();
    assert_eq!(cert["parts"].as_array().unwrap().len(), 3);
    assert_eq!(cert["lower_pairs"].as_array().unwrap().len(), 3);

    assert_eq!(code(&["dim", "--classes", "2,2", "--minwin", "0,0"]), 2);
    assert_eq!(code(&["dim", "--classes", "2,2", "--minwin", "0,3"]), 2);
    assert_eq!(code(&["dim", "--classes", "2,2", "--minwin", "0,0,1"]), 2);
    assert_eq!(code(&["dim", "--classes", "3,3", "--minwin", "0,0"]), 2);
    assert_eq!(code(&["dim", "--classes", "1,1", "--minwin", "1,1"]), 2);
    assert_eq!(code(&["dim", "--spec", "not json"]), 2);
    assert_eq!(code(&["dim"]), 1);
    assert_eq!(code(&["dim", "--classes", "2,2"]), 1);
}

#[test]
fn verify() {
    let report: serde_json::Value = serde_json::from_str(&stdout(&["verify", "--max-n", "6"])).unwrap();
    assert_eq!(report["success"], true);
    let iso_total = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["check"] == "isomorphism" && e["n"] == 6 && e.get("t").is_none())
        .expect("isomorphism total row for n = 6");
    assert!(iso_total["values"].as_object().unwrap().values().all(|v| v == 55));

    let empty: serde_json::Value = serde_json::from_str(&stdout(&["verify", "--max-n", "0"])).unwrap();
    assert_eq!(empty["entries"].as_array().unwrap().len(), 0);

    let small_bound = Command::new(env!("CARGO_BIN_EXE_minwin"))
        .args(["verify", "--max-n", "8"])
        .env("MINWIN_BRUTE_BOUND", "4")
        .output()
        .unwrap();
    assert_eq!(small_bound.status.code(), Some(0));
    let bad_bound = Command::new(env!("CARGO_BIN_EXE_minwin"))
        .args(["verify", "--max-n", "2"])
        .env("MINWIN_BRUTE_BOUND", "lots")
        .output()
        .unwrap();
    assert_eq!(bad_bound.status.code(), Some(1));
}

#[test]
fn bfile() {
    assert!(stdout(&["bfile", "--total", "--max-n", "9"]).ends_with("9 305\n"));
    assert_eq!(stdout(&["bfile", "--t", "1", "--max-n", "5"]), "1 1\n2 2\n3 3\n4 4\n5 5\n");
    assert!(stdout(&["bfile", "--t", "4", "--max-n", "6"]).ends_with("6 1\n"));
    assert_eq!(code(&["bfile", "--max-n", "5"]), 1);
    assert_eq!(code(&["bfile", "--t", "2", "--total"]), 1);
}

#[test]
fn usage_and_determinism() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["nonsense"]), 1);
    assert_eq!(code(&["count", "0", "1"]), 1);
    assert_eq!(code(&["count", "5"]), 1);
    let a = minwin(&["list", "10", "4"]).stdout;
    let b = minwin(&["list", "10", "4"]).stdout;
    assert_eq!(a, b);
}
