use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_indic-cls"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

#[test]
fn detect_per_line() {
    let o = run(&["detect"], "कमल\nকমল\nabc\nक ক\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "devanagari\nbengali\nnone\nmixed\n");
}

#[test]
fn to_cls_and_back() {
    let o = run(&["--lang", "hindi", "to-cls"], "समझना आ\n\n");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "s a m a jh n aa | aa\n\n");
    let o = run(&["--lang", "hindi", "to-ns"], "s a m a jh n aa | aa\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "समझना आ\n");
}

#[test]
fn to_cls_needs_lang() {
    let o = run(&["to-cls"], "आ\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--lang"));
}

#[test]
fn strict_and_lenient() {
    let o = run(&["--lang", "hindi", "to-cls"], "आ ्क\n");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--lang", "hindi", "--lenient", "to-cls"], "आ ्क\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "aa\n");
    assert!(stderr(&o).contains("1 warning"));
}

#[test]
fn unified_mode_uses_the_tag() {
    let o = run(&["to-ns", "--mode", "unified", "--flags"], "<odia k a m a l\n");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "କମଲ୍\texact\n");
    let o = run(&["to-ns", "--mode", "unified"], "k a\n");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--lid-format", "[{lang}]", "to-ns", "--mode", "unified"], "[hindi] aa\n");
    assert_eq!(stdout(&o), "आ\n");
}

#[test]
fn bad_lid_format_is_usage_error() {
    let o = run(&["--lid-format", "nolang", "detect"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_utf8_is_data_error() {
    let mut child = bin().arg("detect").stdin(Stdio::piped()).stdout(Stdio::null()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"ok\n\xff\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn translit_offsets() {
    let o = run(&["translit", "--from", "devanagari", "--to", "odia"], "कमल\n");
    assert_eq!(stdout(&o), "କମଲ\n");
    let o = run(&["translit", "--from", "devanagari", "--to", "odia"], "ऱ\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lexicon_build_then_lookup() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("hi.tsv");
    let o = run(&["--lang", "hindi", "lexicon", "build", "-o", lex.to_str().unwrap()], "कमल कमल\n");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&lex).unwrap(), "k a m a l\tकमल\t2\n");
    let spec = format!("hindi={}", lex.display());
    let o = run(&["to-ns", "--mode", "unified", "--lexicon", &spec, "--flags"], "<hindi k a m a l\n");
    assert_eq!(stdout(&o), "कमल\tlexicon\n");
}

#[test]
fn prep_writes_error_report() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.tsv");
    let errors = dir.path().join("err.tsv");
    fs::write(&manifest, "a\thindi\t1.5\tx.wav\tआ\nb\thindi\t-1\tx.wav\tआ\nc\todia\t2\tx.wav\t\n").unwrap();
    let o = run(
        &["prep", manifest.to_str().unwrap(), "--flavor", "cls-lid", "--errors", errors.to_str().unwrap()],
        "",
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "a\t<hindi aa\nc\t<odia\n");
    let err = fs::read_to_string(&errors).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("b\tvalidate\t"));
    assert!(stderr(&o).contains("empty transcript"));
}

#[test]
fn score_pools_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (r, h, l, out) = (dir.path().join("r"), dir.path().join("h"), dir.path().join("l"), dir.path().join("o"));
    fs::write(&r, "u1\ta b\nu2\tc d e f g h i j\n").unwrap();
    fs::write(&h, "u1\ta x\nu2\tc d e f g h i j\n").unwrap();
    fs::write(&l, "u1\thindi\nu2\todia\n").unwrap();
    let p = |x: &PathBuf| x.to_str().unwrap().to_string();
    let o = run(&["score", &p(&r), &p(&h), "--langs", &p(&l), "--out", &p(&out)], "");
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("overall: WER 10.0 (1/10 words"));
    assert_eq!(fs::read_to_string(&out).unwrap(), "System\tHindi\tOdia\nsystem\t50.0\t0.0\n");

    fs::write(&h, "u1\ta x\n").unwrap();
    let o = run(&["score", &p(&r), &p(&h), "--missing", "error"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["score", &p(&r), &p(&h)], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("WER 90.0 (9/10"));
}

#[test]
fn stats_reproduce_split_hours() {
    let f = fixtures().join("splits");
    let o = run(
        &[
            "stats",
            f.join("train.tsv").to_str().unwrap(),
            f.join("valid.tsv").to_str().unwrap(),
            f.join("test.tsv").to_str().unwrap(),
        ],
        "",
    );
    assert!(o.status.success());
    let total = stdout(&o).lines().last().unwrap().split_whitespace().collect::<Vec<_>>().join(" ");
    assert_eq!(total, "Total 1038 1000 76 100 75 100");
}

#[test]
fn report_renders_both_formats() {
    let path = fixtures().join("wer_in_distribution.tsv");
    let o = run(&["report", path.to_str().unwrap(), "--format", "tsv"], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("Multilingual CLS with LID\t14.2\t22.8\t43.9\t19.5\t27.0\n"));
    let o = run(&["report", "--format", "text"], "System\tHindi\nA\t1.25\n");
    assert!(stdout(&o).contains("A      |   1.3"), "{}", stdout(&o));
    let o = run(&["report"], "System\tKlingon\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(run(&["--help"], "").status.success());
    assert!(run(&["--version"], "").status.success());
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(run(&["report", "--format", "xml"], "").status.code(), Some(1));
}

#[test]
fn missing_input_file_is_data_error() {
    let o = run(&["detect", "/nonexistent/input.txt"], "");
    assert_eq!(o.status.code(), Some(2));
}
