use std::io::Cursor;
use std::process::Command;

use qmonty_core::game::prize_for_seed;
use qmonty_core::gates::text::from_text;
use qmonty_core::scheme1::build_scheme1;
use qmonty_core::scheme2::build_scheme2;
use qmonty_core::DoorId;

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn run(args: &[&str], stdin: &str) -> Run {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qmonty").chain(args.iter().copied());
    let code = qmonty_cli::run(argv, &mut input, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn seed_for(prize: DoorId) -> String {
    (0u64..)
        .find(|&s| prize_for_seed(s) == prize)
        .unwrap()
        .to_string()
}

fn result_line(out: &str) -> &str {
    out.lines()
        .find(|l| l.starts_with("result: "))
        .expect("result line")
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("qmonty-cli-{}-{name}", std::process::id()))
}

#[test]
fn play_switch_wins_when_prize_is_d3() {
    let seed = seed_for(DoorId::D3);
    for engine in ["classical", "scheme1", "scheme2"] {
        let r = run(
            &["play", "--engine", engine, "--seed", &seed],
            "1\nswitch\n",
        );
        assert_eq!(r.code, 0, "{}", r.err);
        assert_eq!(result_line(&r.out), "result: win", "{engine}");
        assert!(r.out.contains("opens door 2"));
    }
}

#[test]
fn play_reprompts_on_bad_door() {
    let r = run(
        &["play", "--engine", "classical", "--seed", "0"],
        "4\n1\nstick\n",
    );
    assert_eq!(r.code, 0);
    assert_eq!(r.out.matches("Pick a door").count(), 2);
    assert_eq!(r.out.matches("not a door").count(), 1);
}

#[test]
fn play_reprompts_on_opened_door_and_junk() {
    let seed = seed_for(DoorId::D3);
    let r = run(
        &["play", "--engine", "scheme2", "--seed", &seed],
        "1\nmaybe\n2\n3\n",
    );
    assert_eq!(r.code, 0);
    assert!(r.out.contains("not a choice"));
    assert!(r.out.contains("already open"));
    assert_eq!(result_line(&r.out), "result: win");
}

#[test]
fn play_engines_agree() {
    for seed in 0..12u64 {
        let seed = seed.to_string();
        for script in ["1\nstick\n", "2\nswitch\n", "3\nswitch\n"] {
            let a = run(&["play", "--engine", "classical", "--seed", &seed], script);
            let b = run(&["play", "--engine", "scheme2", "--seed", &seed], script);
            let c = run(&["play", "--engine", "scheme1", "--seed", &seed], script);
            assert_eq!(result_line(&a.out), result_line(&b.out));
            assert_eq!(result_line(&a.out), result_line(&c.out));
        }
    }
}

#[test]
fn play_shows_amplitudes_for_quantum_engines() {
    let r = run(
        &["play", "--engine", "scheme1", "--seed", "1"],
        "1\nstick\n",
    );
    assert!(r.out.contains("amplitudes"));
    assert_eq!(r.out.matches("⟩").count(), 4);
    let r = run(
        &["play", "--engine", "scheme2", "--seed", "1"],
        "1\nstick\n",
    );
    assert!(r.out.contains("ancilla register"));
    let r = run(
        &["play", "--engine", "classical", "--seed", "1"],
        "1\nstick\n",
    );
    assert!(!r.out.contains("⟩"));
}

#[test]
fn play_fails_cleanly_on_eof() {
    let r = run(&["play", "--seed", "1"], "1\n");
    assert_eq!(r.code, 1);
    assert!(r.err.contains("input ended"));
}

#[test]
fn simulate_csv_headers_and_rows() {
    let cases = [
        (
            "2",
            "prize,first,second,ancilla,win_quantum,win_classical,agree",
            18,
        ),
        ("1", "prize,first,opened,p_stick,p_switch,p_measure", 9),
        ("classical", "prize,first,opened,second,win", 18),
    ];
    for (scheme, header, rows) in cases {
        let r = run(&["simulate", "--scheme", scheme, "--format", "csv"], "");
        assert_eq!(r.code, 0, "{}", r.err);
        let lines: Vec<&str> = r.out.lines().collect();
        assert_eq!(lines[0], header);
        assert_eq!(lines.len(), rows + 1);
    }
    let r = run(&["simulate", "--scheme", "2", "--format", "csv"], "");
    assert!(r.out.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn simulate_table_lists_two_door_support() {
    let r = run(&["simulate", "--scheme", "1"], "");
    assert_eq!(r.code, 0);
    let rows: Vec<&str> = r.out.lines().skip(1).collect();
    assert_eq!(rows.len(), 9);
    for row in rows {
        let support = row.split_whitespace().nth(3).unwrap();
        assert_eq!(support.matches('D').count(), 2, "{row}");
    }
}

#[test]
fn simulate_json_parses() {
    let r = run(&["simulate", "--scheme", "2", "--format", "json"], "");
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 18);
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(run(&["simulate", "--scheme", "9"], "").code, 2);
    assert_eq!(
        run(&["simulate", "--scheme", "1", "--format", "xml"], "").code,
        2
    );
    assert_eq!(run(&["frobnicate"], "").code, 2);
    assert_eq!(run(&[], "").code, 2);
    let out = tmp("never.txt");
    let out = out.to_str().unwrap();
    let r = run(
        &[
            "export", "--scheme", "2", "--prize", "3", "--first", "1", "--out", out,
        ],
        "",
    );
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--second"));
    let r = run(
        &[
            "export", "--scheme", "2", "--prize", "3", "--first", "1", "--second", "2", "--out",
            out,
        ],
        "",
    );
    assert_eq!(r.code, 2, "second pick on the opened door");
    assert_eq!(
        run(
            &["export", "--scheme", "1", "--prize", "4", "--first", "1", "--out", out],
            ""
        )
        .code,
        2
    );
}

#[test]
fn export_round_trips() {
    let path = tmp("s1.txt");
    let p = path.to_str().unwrap();
    let r = run(
        &[
            "export", "--scheme", "1", "--prize", "D3", "--first", "D1", "--out", p,
        ],
        "",
    );
    assert_eq!(r.code, 0, "{}", r.err);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "qubits 12"));
    assert!(text.lines().any(|l| l.starts_with("h ")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("ch ") || l.starts_with("cch ")));
    let back = from_text(&text).unwrap().simulate().unwrap();
    let direct = build_scheme1(DoorId::D3, DoorId::D1)
        .unwrap()
        .simulate()
        .unwrap();
    assert!(back.max_abs_diff(&direct) < 1e-10);

    let path2 = tmp("s2.txt");
    let p2 = path2.to_str().unwrap();
    let r = run(
        &[
            "export", "--scheme", "2", "--prize", "2", "--first", "1", "--second", "2", "--out", p2,
        ],
        "",
    );
    assert_eq!(r.code, 0, "{}", r.err);
    let back = from_text(&std::fs::read_to_string(&path2).unwrap())
        .unwrap()
        .simulate()
        .unwrap();
    let direct = build_scheme2(DoorId::D2, DoorId::D1, DoorId::D2)
        .unwrap()
        .simulate()
        .unwrap();
    assert!(back.max_abs_diff(&direct) < 1e-10);

    // byte-identical on repeat
    let first = std::fs::read(&path).unwrap();
    run(
        &[
            "export", "--scheme", "1", "--prize", "D3", "--first", "D1", "--out", p,
        ],
        "",
    );
    assert_eq!(std::fs::read(&path).unwrap(), first);
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(path2);
}

#[test]
fn export_to_unwritable_path_exits_1() {
    let r = run(
        &[
            "export",
            "--scheme",
            "1",
            "--prize",
            "1",
            "--first",
            "1",
            "--out",
            "/nonexistent-dir/x.txt",
        ],
        "",
    );
    assert_eq!(r.code, 1);
    assert!(r.err.contains("cannot write"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmonty"))
        .args(["simulate", "--scheme", "2", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 19);

    let bad = Command::new(env!("CARGO_BIN_EXE_qmonty"))
        .args(["serve", "--addr", "not-an-address"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let env_bad = Command::new(env!("CARGO_BIN_EXE_qmonty"))
        .arg("serve")
        .env("QMONTY_ADDR", "also-bad")
        .output()
        .unwrap();
    assert_eq!(env_bad.status.code(), Some(2));
}

#[test]
fn serve_answers_health_on_env_address() {
    use std::io::{Read, Write};
    use std::net::{TcpListener, TcpStream};
    use std::time::{Duration, Instant};

    let port = TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let addr = format!("127.0.0.1:{port}");
    let mut child = Command::new(env!("CARGO_BIN_EXE_qmonty"))
        .arg("serve")
        .env("QMONTY_ADDR", &addr)
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();

    let deadline = Instant::now() + Duration::from_secs(10);
    let body = loop {
        if let Ok(mut s) = TcpStream::connect(&addr) {
            s.write_all(b"GET /health HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n")
                .unwrap();
            let mut buf = String::new();
            s.read_to_string(&mut buf).unwrap();
            break buf;
        }
        assert!(Instant::now() < deadline, "service did not start");
        std::thread::sleep(Duration::from_millis(50));
    };
    child.kill().unwrap();
    let _ = child.wait();
    assert!(body.starts_with("HTTP/1.1 200"), "{body}");
    assert!(body.contains(r#"{"status":"ok"}"#));
}
