use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bwtkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwtkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, data: &[u8]) -> String {
        let path = self.0.path().join(name);
        fs::write(&path, data).unwrap();
        path.to_str().unwrap().to_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_owned()
    }
}

fn read(path: impl AsRef<Path>) -> Vec<u8> {
    fs::read(path).unwrap()
}

#[test]
fn build_bwt_of_banana() {
    let dir = Scratch::new();
    let input = dir.file("in.txt", b"banana\n");
    let out = dir.path("bwt");
    let run = bwtkit(&["build-bwt", &input, &out]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(read(&out), b"annb#aa");
}

#[test]
fn lcp_of_banana_in_one_byte() {
    let dir = Scratch::new();
    let bwt = dir.file("bwt", b"annb#aa");
    let out = dir.path("lcp");
    for algorithm in ["auto", "bgos", "stack", "queue"] {
        let run = bwtkit(&[
            "lcp",
            &bwt,
            &out,
            "--lcp-bytes",
            "1",
            "--algorithm",
            algorithm,
        ]);
        assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
        assert_eq!(read(&out), [0, 0, 1, 3, 0, 0, 2], "{algorithm}");
    }
}

#[test]
fn lcp_of_two_strings_in_two_bytes() {
    let dir = Scratch::new();
    let bwt = dir.file("bwt", b"CA##A");
    let out = dir.path("lcp");
    let run = bwtkit(&[
        "lcp",
        &bwt,
        &out,
        "--lcp-bytes",
        "2",
        "--queue-threshold",
        "1",
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(read(&out), [0, 0, 0, 0, 0, 0, 1, 0, 0, 0]);
}

#[test]
fn narrow_width_overflow_exits_3_without_output() {
    let dir = Scratch::new();
    let input = dir.file("in.txt", &[b'A'; 299]);
    let bwt = dir.path("bwt");
    assert_eq!(code(&bwtkit(&["build-bwt", &input, &bwt])), 0);
    let out = dir.path("lcp");
    let run = bwtkit(&["lcp", &bwt, &out, "--lcp-bytes", "1"]);
    assert_eq!(code(&run), 3);
    assert!(String::from_utf8_lossy(&run.stderr).contains("298"));
    assert!(!PathBuf::from(&out).exists());
    assert_eq!(code(&bwtkit(&["lcp", &bwt, &out, "--lcp-bytes", "2"])), 0);
    assert_eq!(read(&out).len(), 600);
}

#[test]
fn merge_writes_document_array_bwt_and_lcp() {
    let dir = Scratch::new();
    let b1 = dir.file("b1", b"C#A");
    let b2 = dir.file("b2", b"A#");
    let (da, bwt, lcp) = (dir.path("da"), dir.path("bwt"), dir.path("lcp"));
    let run = bwtkit(&[
        "merge",
        &b1,
        &b2,
        &da,
        "--bwt-out",
        &bwt,
        "--lcp-out",
        &lcp,
        "--lcp-bytes",
        "1",
        "--packed-da",
        "false",
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(read(&da), b"01100");
    assert_eq!(read(&bwt), b"CA##A");
    assert_eq!(read(&lcp), [0, 0, 0, 1, 0]);

    let run = bwtkit(&["merge", &b1, &b2, &da]);
    assert_eq!(code(&run), 0);
    assert_eq!(read(&da), [0b0000_0110]);
}

#[test]
fn verify_accepts_correct_artifacts_and_locates_mismatches() {
    let dir = Scratch::new();
    let first = dir.file("one.txt", b"AC\n");
    let second = dir.file("two.txt", b"A\n");
    let (b1, b2) = (dir.path("b1"), dir.path("b2"));
    assert_eq!(code(&bwtkit(&["build-bwt", &first, &b1])), 0);
    assert_eq!(code(&bwtkit(&["build-bwt", &second, &b2])), 0);
    let (da, bwt, lcp) = (dir.path("da"), dir.path("bwt"), dir.path("lcp"));
    let run = bwtkit(&["merge", &b1, &b2, &da, "--bwt-out", &bwt, "--lcp-out", &lcp]);
    assert_eq!(code(&run), 0);

    let ok = bwtkit(&[
        "verify", &first, "--second", &second, "--bwt", &bwt, "--lcp", &lcp, "--da", &da,
    ]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));

    let wrong = dir.file("wrong", b"CA#A#");
    let run = bwtkit(&["verify", &first, "--second", &second, "--bwt", &wrong]);
    assert_eq!(code(&run), 4);
    assert!(String::from_utf8_lossy(&run.stderr).contains("position 4"));
}

#[test]
fn empty_or_malformed_input_is_rejected() {
    let dir = Scratch::new();
    let empty = dir.file("empty.txt", b"");
    let out = dir.path("out");
    let run = bwtkit(&["build-bwt", &empty, &out]);
    assert_eq!(code(&run), 2);
    assert!(!PathBuf::from(&out).exists());

    let no_terminator = dir.file("bwt", b"ACGT");
    assert_eq!(code(&bwtkit(&["lcp", &no_terminator, &out])), 2);

    let missing = dir.path("missing");
    assert_eq!(code(&bwtkit(&["lcp", &missing, &out])), 1);
    assert_eq!(code(&bwtkit(&["lcp", &no_terminator])), 1);
    assert_eq!(code(&bwtkit(&["--help"])), 0);
}

#[test]
fn stats_reports_counts_and_strategies() {
    let dir = Scratch::new();
    let bwt = dir.file("bwt", b"annb#aa");
    let run = bwtkit(&["stats", &bwt]);
    assert_eq!(code(&run), 0);
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("n\t7\n"));
    assert!(stdout.contains("strings\t1\n"));
    assert!(stdout.contains("count\ta\t3\n"));
    assert!(stdout.contains("backend\tpacked"));
}
