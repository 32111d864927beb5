use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn coxembed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxembed")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_over_fixtures() {
    let m4 = fixture("m2x2_4.txt");
    let m3 = fixture("m2x2_3.txt");
    let m2 = fixture("m2x2_2.txt");
    let m6 = fixture("m2x2_6.txt");
    let raag = fixture("m3x3_raag.txt");
    let pc = fixture("n3x3_raag.txt");
    let dihedral = format!("@{}", fixture("dihedral6.txt"));
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["verify", "thm1", "--m", &m4, "--p", "2,2"], 0),
        (vec!["verify", "thm1", "--m", &m6, "--p", "3,inf"], 0),
        (vec!["verify", "thm1", "--m", &raag, "--p", "inf,inf,inf"], 0),
        (vec!["verify", "prop2", "--m", &m3, "--p", "4,4"], 0),
        (vec!["verify", "prop2", "--m", &m3, "--p", "2,2"], 0),
        (vec!["verify", "klein"], 0),
        (vec!["verify", "artin", "--m", &m2], 0),
        (vec!["verify", "artin", "--m", &m3], 1),
        (vec!["verify", "thm1", "--m", &m3, "--p", "2,2"], 2),
        (vec!["verify", "prop2", "--m", &m3, "--p", "3,3"], 2),
        (vec!["verify", "thm1", "--p", "2,2"], 2),
        (vec!["build", "coxeter", "--m", &raag], 0),
        (vec!["build", "pc", "--m", &pc, "--p", "inf,inf,inf"], 0),
        (vec!["build", "artin", "--m", &m3], 0),
        (vec!["embed", "thm1", "--m", &m4, "--p", "2,2"], 0),
        (vec!["embed", "klein", "--format", "json"], 0),
        (vec!["kernel", "prop2", "--m", &m3, "--p", "4,4", "--mode", "both"], 0),
        (vec!["order", &dihedral], 0),
        (vec!["order", "< a | >", "--max-cosets", "100"], 1),
        (vec!["order", "< a | b >"], 2),
        (vec!["index", &dihedral, "s1"], 0),
        (vec!["abelianization", &dihedral], 0),
        (vec!["simplify", "< a, b, c | a b c, c^2 a >"], 0),
        (vec!["match", "< a, b | a^2, b^3 >", "< x, y | y^3, x^2 >"], 0),
        (vec!["match", "< a | a^2 >", "< a | a^3 >"], 1),
        (vec!["order", "@/nonexistent/file"], 2),
        (vec!["order", &dihedral, "--max-cosets", "0"], 2),
        (vec!["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let o = coxembed(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        if code == 2 {
            assert_eq!(String::from_utf8_lossy(&o.stderr).trim_end().lines().count(), 1, "{args:?}");
        }
    }
}

#[test]
fn verify_json_report() {
    let o = coxembed(&["verify", "thm1", "--m", &fixture("m2x2_4.txt"), "--p", "2,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["finite"]["ambient_order"], 32);
    assert_eq!(v["finite"]["kernel_order"], 8);
    assert_eq!(v["finite"]["index"], 4);
    let keys = ["\"instance\"", "\"hom_valid\"", "\"image_rank\"", "\"transversal_size\"", "\"evaluated\"", "\"raw\"", "\"finite\"", "\"split_section\"", "\"verdict\""];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "key order {positions:?}");

    let o = coxembed(&["verify", "klein", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["finite"], "skipped");
}

#[test]
fn documented_examples() {
    let o = coxembed(&["kernel", "klein", "--mode", "evaluated"]);
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    let shown: coxembed::Presentation = first.parse().unwrap();
    let want: coxembed::Presentation = "< a, b | a^-1 b a b >".parse().unwrap();
    assert_eq!(shown.relator_nf_multiset(), want.relator_nf_multiset());
    assert!(text.contains("a = s1 r1 r2") && text.contains("b = s2 r2"));

    let o = coxembed(&["order", "< s1,s2 | s1^2, s2^2, (s1 s2)^3 >"]);
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn output_is_deterministic_and_out_flag_writes_file() {
    let m4 = fixture("m2x2_4.txt");
    let args = ["kernel", "thm1", "--m", &m4, "--p", "2,2", "--mode", "both", "--format", "json"];
    let a = coxembed(&args);
    let b = coxembed(&args);
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("coxembed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = coxembed(&["verify", "thm1", "--m", &m4, "--p", "2,2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let direct = coxembed(&["verify", "thm1", "--m", &m4, "--p", "2,2", "--format", "json"]);
    assert_eq!(written.as_bytes(), direct.stdout.as_slice());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = coxembed::cli::run(["coxembed", "abelianization", "< a, b | a^-1 b a b >"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "Z + Z_2\n");
}
