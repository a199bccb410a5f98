use genwitt::cli::main_with;

const ROOT: &str = env!("CARGO_MANIFEST_DIR");

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("genwitt".to_string()).chain(args.iter().map(|a| a.replace("@", ROOT)));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{ROOT}/golden/{name}")).unwrap()
}

#[test]
fn example_reports() {
    for name in ["example1", "example2"] {
        let (code, out, _) = run(&["examples", "run", name]);
        assert_eq!(code, 0);
        assert_eq!(out, golden(&format!("{name}.tsv")));
    }
}

#[test]
fn examples_list() {
    let (code, out, _) = run(&["examples", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("example1") && out.contains("example2"));
}

#[test]
fn check_example2() {
    let (code, out, _) = run(&["check", "@/configs/example2.json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("example2_check.tsv"));
}

#[test]
fn simplicity_json() {
    let (code, out, _) = run(&["--format", "json", "--module", "wedge:1", "simplicity", "@/configs/example2.json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("example2_wedge1_simplicity.json"));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(doc.to_string().contains("proper-submodule"));
}

#[test]
fn virasoro_verma_table() {
    let (code, out, _) = run(&["--depth", "5", "verma", "@/configs/virasoro.json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("virasoro_verma.tsv"));
}

#[test]
fn growth_table() {
    let (code, out, _) = run(&["growth"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("growth.tsv"));
}

#[test]
fn bracket_of_two_elements() {
    let (code, out, _) = run(&["bracket", "@/configs/example2.json", "t^(1,0,0)[1,0]", "t^(0,1,0)[0,1]"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.trim().is_empty());
}

#[test]
fn missing_config_exits_with_two() {
    let (code, _, err) = run(&["check", "@/configs/nope.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}

#[test]
fn bad_config_names_the_pointer() {
    let dir = std::env::temp_dir().join(format!("genwitt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"field":{"m":12},"lattice":{"n":1},"pairing":{"P":[["1"]]}}"#).unwrap();
    let (code, _, err) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("/field/m"), "{err}");
}

#[test]
fn unknown_example_is_an_error() {
    let (code, _, err) = run(&["examples", "run", "example3"]);
    assert_eq!(code, 2);
    assert!(err.contains("example3"));
}
