use foli::cli::main_with;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("foli").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_prints_extension_and_truth() {
    let m1 = fixture("m1.model");
    let (code, out, _) = run(&["eval", &m1, "p(x) & q(x,y)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(a,b)");
    let (_, out, _) = run(&["eval", &m1, "true"]);
    assert_eq!(out.trim(), "t");
    let (_, out, _) = run(&["eval", &m1, "exists x. q(x,x)"]);
    assert_eq!(out.trim(), "t");
    let (_, out, _) = run(&["eval", &m1, "p(@b)"]);
    assert_eq!(out.trim(), "f");
}

#[test]
fn eval_routes_agree() {
    let m1 = fixture("m1.model");
    for route in ["tarski", "algebra", "kripke", "intensional"] {
        let (code, out, _) = run(&["eval", &m1, "exists y. q(x,y) & ~p(y)", "--semantics", route]);
        assert_eq!(code, 0, "{route}");
        assert_eq!(out.trim(), "(a)\n(b)", "{route}");
    }
    let (code, out, _) = run(&["eval", &m1, "q(x,y) & ~(x = y)", "--check-all"]);
    assert_eq!(code, 0);
    assert!(out.contains("agree"), "{out}");
}

#[test]
fn models_lists_worlds() {
    let sig = fixture("p.sig");
    let (code, out, _) = run(&["models", &sig, &fixture("some_p.fol")]);
    assert_eq!(code, 0);
    assert!(out.contains("w1") && out.contains("w2") && out.contains("w3") && !out.contains("w0"));
    assert!(out.contains("3 of 4 worlds"), "{out}");
    let (_, out, _) = run(&["models", &sig, &fixture("contradiction.fol")]);
    assert!(out.contains("0 of 4 worlds"), "{out}");
    let (_, out, _) = run(&["models", &sig]);
    assert!(out.contains("4 of 4 worlds"), "{out}");
}

#[test]
fn models_dump_writes_files() {
    let dir = std::env::temp_dir().join(format!("foli-dump-{}", std::process::id()));
    let (code, _, _) = run(&["models", &fixture("p.sig"), &fixture("some_p.fol"), "--dump", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut names: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["w1.model", "w2.model", "w3.model"]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn entails_verdicts_and_exit_codes() {
    let sig = fixture("m1.sig");
    let gamma = fixture("implication.fol");
    let (code, out, _) = run(&["entails", &sig, &gamma, "q(c,c)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("entailed"), "{out}");
    let (code, out, _) = run(&["entails", &sig, &fixture("empty.fol"), "p(c)"]);
    assert_eq!(code, 1);
    assert!(out.contains("countermodel w0"), "{out}");
}

#[test]
fn intension_commands() {
    let sig = fixture("p.sig");
    let empty = fixture("empty.fol");
    let (code, out, _) = run(&["intension", &sig, &empty, "p(x)"]);
    assert_eq!(code, 0);
    for line in ["w0", "w1", "w2", "w3"] {
        assert!(out.contains(line), "{out}");
    }
    let (_, out, _) = run(&["intension", &sig, &empty, "p(x)", "--diamond"]);
    assert!(out.contains("{(a),(b)}"), "{out}");

    let bs = fixture("bought_sold.sig");
    let theory = fixture("bought_sold.fol");
    let (_, out, _) = run(&["intension", &bs, &theory, "p1(x)", "--equal", "p2(x)"]);
    assert!(out.contains("equal=true same-concept=false"), "{out}");
    let (_, out, _) = run(&["intension", &bs, &empty, "p1(x)", "--equal", "p2(x)"]);
    assert!(out.contains("equal=false"), "{out}");
    let (_, out, _) = run(&["intension", &bs, &empty, "p1(x)", "--equiv", "p2(x)"]);
    assert!(out.contains("equivalent=true"), "{out}");
}

#[test]
fn parse_echoes_and_rejects() {
    let sig = fixture("m1.sig");
    let (code, out, _) = run(&["parse", "forall x. (p(x) -> q(x,c))", "--sig", &sig]);
    assert_eq!(code, 0);
    assert!(!out.trim().is_empty());
    let (again, out2, _) = run(&["parse", out.trim(), "--sig", &sig]);
    assert_eq!(again, 0);
    assert_eq!(out, out2);
    let (code, _, err) = run(&["parse", "p(x", "--sig", &sig]);
    assert_eq!(code, 2);
    assert!(err.contains("error"), "{err}");
    let (code, _, _) = run(&["parse", "<r> p(x)", "--sig", &sig, "--modal"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["parse", "--theory", &fixture("pinned.fol")]);
    assert_eq!(code, 0);
}

#[test]
fn verify_runs_suites() {
    let (code, out, _) = run(&["verify", "relalg-laws", "--formulas", "50"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS") && !out.contains("FAIL"), "{out}");
    let (code, _, _) = run(&["verify", "no-such-suite"]);
    assert_eq!(code, 2);
}

#[test]
fn guard_is_enforced() {
    let (code, _, err) = run(&["models", &fixture("m1.sig"), "--domain-size", "4", "--guard", "100"]);
    assert_eq!(code, 3);
    assert!(err.contains("100"), "{err}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "diagram", "--formulas", "30", "--interpretations", "4", "--json", "--seed", "11"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 11);
}
