use std::process::Command as Process;

use horo_cli::verify::is_order5_square_types;
use horo_cli::*;
use horo_typing::TypeGraph;

fn horo(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_horo"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn config_text_and_keys() {
    let mut cfg = RunConfig::default();
    cfg.apply_text("# comment\nsource = free:2\ncone-depth = 2  # trailing\n\nequiv_depth=6\n")
        .unwrap();
    assert_eq!(cfg.source, "free:2");
    assert_eq!((cfg.cone_depth, cfg.equiv_depth), (2, 6));
    assert_eq!(cfg.delta().unwrap(), 0);
    assert_eq!(cfg.radius(), 8);
    cfg.set("depth", "5").unwrap();
    cfg.set("horizon", "5").unwrap();
    assert_eq!(cfg.radius(), 10);
    assert!(matches!(cfg.set("colour", "red"), Err(CliError::Input(_))));
    assert!(matches!(cfg.set("depth", "x"), Err(CliError::Input(_))));
    assert!(matches!(cfg.apply_text("depth 4"), Err(CliError::Input(_))));
    cfg.set("radius", "7").unwrap();
    assert!(matches!(cfg.check(), Err(CliError::Radius(_))));
    cfg.set("depth", "0").unwrap();
    assert!(matches!(cfg.check(), Err(CliError::Input(_))));
}

#[test]
fn atoms_report() {
    let cfg = RunConfig {
        horizon: 4,
        ..Default::default()
    };
    let out = run_pipeline(&Command::Atoms { level: Some(1) }, &cfg).unwrap();
    assert_eq!(out.report, "level 1: 11 atoms, 10 infinite\n");
    let out = run_pipeline(&Command::Atoms { level: Some(2) }, &cfg).unwrap();
    assert_eq!(out.report, "level 2: 36 atoms, 30 infinite\n");
}

#[test]
fn ball_report() {
    let out = run_pipeline(&Command::Ball, &RunConfig::default()).unwrap();
    assert!(
        out.report.contains("|S1| = 5\n|S2| = 15\n"),
        "{}",
        out.report
    );
}

#[test]
fn types_artifact_is_the_four_type_graph() {
    let out = run_pipeline(
        &Command::Types {
            format: Format::Text,
        },
        &RunConfig::default(),
    )
    .unwrap();
    assert_eq!(out.artifacts[0].name, "types.txt");
    let tg = TypeGraph::parse(&out.artifacts[0].content).unwrap();
    assert!(is_order5_square_types(&tg));
    let dot = run_pipeline(
        &Command::Types {
            format: Format::Dot,
        },
        &RunConfig::default(),
    )
    .unwrap();
    assert!(dot.artifacts[0].content.starts_with("digraph types {"));
    assert!(dot.artifacts[0].content.contains("C -> D [label=\"1\"]"));
}

#[test]
fn renamed_graphs_still_match() {
    let tg = TypeGraph::parse("type R\nchild 0 X\nchild 1 Y\nchild 2 X\nchild 3 Y\nchild 4 X\nchild 5 Y\nchild 6 X\nchild 7 Y\nchild 8 X\nchild 9 Y\ntype Y\nchild 0 Y\nchild 1 W\nchild 2 Y\ntype X\nchild 0 X\nchild 1 Y\nchild 2 X\ntype W\nchild 0 X\n").unwrap();
    assert!(is_order5_square_types(&tg));
    let bad = TypeGraph::parse("type R\nchild 0 X\ntype X\nchild 0 X\n").unwrap();
    assert!(!is_order5_square_types(&bad));
}

#[test]
fn transducer_artifacts_are_deterministic() {
    let cmd = Command::Transducer {
        word: "s".into(),
        format: Format::Text,
        minimize: true,
        binary: false,
    };
    let a = run_pipeline(&cmd, &RunConfig::default()).unwrap();
    let b = run_pipeline(&cmd, &RunConfig::default()).unwrap();
    assert_eq!(a, b);
    assert!(a.report.contains("minimized: 13 states"));
    let (code, first) = horo(&["transducer", "--word", "r s", "--binary"]);
    assert_eq!(code, 0);
    assert_eq!(horo(&["transducer", "--word", "r s", "--binary"]).1, first);
}

#[test]
fn artifacts_are_written_to_the_output_directory() {
    let dir = std::env::temp_dir().join(format!("horo-cli-test-{}", std::process::id()));
    let (code, _) = horo(&[
        "transducer",
        "--word",
        "r",
        "--format",
        "dot",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(dir.join("transducer.dot")).unwrap();
    assert!(dot.starts_with("digraph transducer {"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn encode_reports_addresses() {
    let out = run_pipeline(
        &Command::Encode {
            chain: Some("-".into()),
        },
        &RunConfig::default(),
    )
    .unwrap();
    assert!(out.report.contains("address -: -"), "{}", out.report);
    let err = run_pipeline(
        &Command::Encode {
            chain: Some("0.x".into()),
        },
        &RunConfig::default(),
    )
    .unwrap_err();
    assert!(matches!(err, CliError::Input(_)));
}

#[test]
fn verify_on_the_free_group() {
    let (code, out) = horo(&["verify", "--source", "free:2", "--depth", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("8/8 checks passed"));
}

#[test]
fn verify_on_the_tiling() {
    let out = run_pipeline(&Command::Verify, &RunConfig::default()).unwrap();
    assert!(!out.failed, "{}", out.report);
    assert!(out.report.contains("PASS reference machines"));
}

#[test]
fn exit_codes_by_error_class() {
    assert_eq!(horo(&["ball", "--source", "bogus"]).0, 2);
    assert_eq!(horo(&["types", "--radius", "6"]).0, 3);
    assert_eq!(
        horo(&["transducer", "--word", "s", "--max-states", "3"]).0,
        4
    );
    assert_eq!(horo(&["transducer", "--word", "q"]).0, 2);
    let missing = horo(&["ball", "--config", "/nonexistent/horo.conf"]);
    assert_eq!(missing.0, 2);
}

#[test]
fn flags_override_the_config_file() {
    let path = std::env::temp_dir().join(format!("horo-cli-conf-{}", std::process::id()));
    std::fs::write(&path, "source = line\nradius = 9\n").unwrap();
    let (code, out) = horo(&["ball", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("|S9| = 2"), "{out}");
    let (_, out) = horo(&[
        "ball",
        "--config",
        path.to_str().unwrap(),
        "--source",
        "free:2",
    ]);
    assert!(out.contains("|S1| = 4"), "{out}");
    std::fs::remove_file(path).unwrap();
}
