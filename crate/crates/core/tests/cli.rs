use std::io::Write;
use std::process::{Command, Output};

fn bks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bks")).args(args).output().expect("spawn bks")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const GOLDEN: &[(&str, &str, i32, &str)] = &[
    ("one", "identical", 0, r#"{"kind":"color","ensemble":"one","semantics":"identical","classes":1,"verdict":"colorable","witness":null,"certificate":[1],"oracle":null}"#),
    ("one", "distinct", 0, r#"{"kind":"color","ensemble":"one","semantics":"distinct","classes":1,"verdict":"colorable","witness":null,"certificate":[1],"oracle":null}"#),
    ("one", "nonproportional", 0, r#"{"kind":"color","ensemble":"one","semantics":"nonproportional","classes":1,"verdict":"colorable","witness":null,"certificate":[1],"oracle":null}"#),
    ("one", "heavy", 0, r#"{"kind":"color","ensemble":"one","semantics":"heavy","classes":1,"verdict":"colorable","witness":null,"certificate":[1],"oracle":null}"#),
    ("half-half", "identical", 1, r#"{"kind":"color","ensemble":"half-half","semantics":"identical","classes":1,"verdict":"uncolorable","witness":"parity","certificate":null,"oracle":null}"#),
    ("half-half", "distinct", 0, r#"{"kind":"color","ensemble":"half-half","semantics":"distinct","classes":2,"verdict":"colorable","witness":null,"certificate":[0,1],"oracle":null}"#),
    ("half-half", "nonproportional", 3, ""),
    ("half-half", "heavy", 3, ""),
    ("cabello-xyz", "identical", 1, r#"{"kind":"color","ensemble":"cabello-xyz","semantics":"identical","classes":6,"verdict":"uncolorable","witness":"parity","certificate":null,"oracle":null}"#),
    ("cabello-xyz", "distinct", 1, r#"{"kind":"color","ensemble":"cabello-xyz","semantics":"distinct","classes":6,"verdict":"uncolorable","witness":"parity","certificate":null,"oracle":null}"#),
    ("cabello-xyz", "nonproportional", 1, r#"{"kind":"color","ensemble":"cabello-xyz","semantics":"nonproportional","classes":6,"verdict":"uncolorable","witness":"parity","certificate":null,"oracle":null}"#),
    ("cabello-xyz", "heavy", 3, ""),
];

#[test]
fn color_records_for_every_builtin_and_semantics() {
    for &(name, semantics, exit, line) in GOLDEN {
        let o = bks(&["--output", "record", "color", "--builtin", name, "--semantics", semantics]);
        assert_eq!(code(&o), exit, "{name} {semantics}: {}", stderr(&o));
        if exit == 3 {
            assert!(stdout(&o).is_empty());
            let err = stderr(&o);
            assert!(err.starts_with("error: input: "), "{err}");
            assert_eq!(err.lines().count(), 1);
        } else {
            assert_eq!(stdout(&o), format!("{line}\n"));
        }
    }
}

#[test]
fn oracle_flag_reports_agreement() {
    let o = bks(&["--output", "record", "color", "--builtin", "cabello-xyz", "--semantics", "distinct", "--oracle"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains(r#""oracle":"agree""#));
    let human = bks(&["color", "--builtin", "cabello-xyz", "--semantics", "distinct", "--oracle"]);
    assert!(stdout(&human).contains("oracle: agree"));
}

#[test]
fn emitted_builtin_is_reparsed_by_validate_and_color() {
    let emitted = bks(&["builtin", "cabello-xyz", "--emit"]);
    assert_eq!(code(&emitted), 0);
    let dir = std::env::temp_dir().join(format!("bks-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cabello.txt");
    std::fs::write(&path, &emitted.stdout).unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(code(&bks(&["validate", path])), 0);
    let o = bks(&["--output", "record", "color", path, "--semantics", "distinct"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains(r#""verdict":"uncolorable""#));

    let half = bks(&["builtin", "half-half", "--emit"]);
    assert_eq!(stdout(&half), "ensemble \"half-half\"\npovm\nelement 1/2 0 0 0\nelement 1/2 0 0 0\n");
}

#[test]
fn validate_exit_codes() {
    let dir = std::env::temp_dir().join(format!("bks-validate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
        p.to_str().unwrap().to_owned()
    };
    let incomplete = write("incomplete.txt", "ensemble \"x\"\npovm\nelement 1/2 0 0 0\n");
    let o = bks(&["--output", "record", "validate", &incomplete]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains(r#""valid":false"#));

    let zero = write("zero.txt", "ensemble \"z\"\npovm\nelement 1 0 0 0\nelement 0 0 0 0\n");
    assert_eq!(code(&bks(&["validate", &zero])), 3);
    assert_eq!(code(&bks(&["validate", &zero, "--allow-zero-elements"])), 0);

    let bad = write("bad.txt", "ensemble \"b\"\npovm\nelement 1/0 0 0 0\n");
    let o = bks(&["validate", &bad]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("bad.txt:3:9"), "{}", stderr(&o));

    assert_eq!(code(&bks(&["validate", "/definitely/not/here"])), 3);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["color", "--builtin", "one"][..],
        &["color", "--semantics", "distinct"],
        &["sweep", "--shape", "3,x", "--semantics", "distinct"],
        &["theorem", "t9"],
        &["frobnicate"],
    ] {
        let o = bks(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: usage: "), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(code(&bks(&["--help"])), 0);
    let o = bks(&["color", "--builtin", "nope", "--semantics", "distinct"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).starts_with("error: input: unknown builtin"));
}

#[test]
fn sweeps_and_theorems() {
    let o = bks(&["--output", "record", "sweep", "--shape", "4,4,4", "--semantics", "distinct", "--list-uncolorable"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains(r#""uncolorable":1"#));
    assert!(stdout(&o).contains(r#""uncolorable_patterns":[[[0,1,2,3],[0,1,4,5],[2,3,4,5]]]"#));
    let human = bks(&["sweep", "--shape", "4,4,4", "--semantics", "distinct", "--list-uncolorable"]);
    assert!(stdout(&human).contains("{a,b,c,d} {a,b,e,f} {c,d,e,f}"));

    let o = bks(&["sweep", "--shape", "3,3,3", "--semantics", "distinct"]);
    assert_eq!(code(&o), 0);

    for id in ["t1", "t2", "t3"] {
        let o = bks(&["--output", "record", "theorem", id]);
        assert_eq!(code(&o), 0, "{id}: {}", stdout(&o));
        let last = stdout(&o).lines().last().unwrap().to_owned();
        assert!(last.starts_with(&format!(r#"{{"kind":"theorem","theorem":"{id}","passed":true"#)), "{last}");
    }
}
