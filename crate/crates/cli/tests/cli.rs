use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuboid-newton")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn force_between_cubes() {
    let o = cli(&["force", "--axis", "1", "--q", "1,2;0,1;0,1", "--qp", "0,1;0,1;0,1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("status: elementary\n"), "{s}");
    assert!(s.contains("value: 0.925981260557\n"), "{s}");
}

#[test]
fn weighted_squares_in_latex() {
    let o = cli(&["potential", "--q", "0,1;0,1", "--qp", "0,1;0,1", "--n", "1,1", "--m", "2,2", "--format", "latex"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("\\frac{1}{12} - \\frac{3\\sqrt{2}}{40} + \\frac{19}{120}\\log(1+\\sqrt{2})"));
}

#[test]
fn decimal_and_fraction_bounds_are_exact() {
    let a = stdout(&cli(&["potential", "--q", "0,0.5", "--qp", "1,1.25", "--format", "json"]));
    let b = stdout(&cli(&["potential", "--q", "0,1/2", "--qp", "1,5/4", "--format", "json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["status"], "elementary");
    assert_eq!(v["problem"]["q"][0][1], "1/2");
}

#[test]
fn demos_run() {
    let o = cli(&["--demo", "waldvogel-check"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("reference: 2.38007736398"), "{s}");
    let o = cli(&["--demo", "v100", "--digits", "9"]);
    assert!(stdout(&o).contains("value: 0.246255484\n"));
}

#[test]
fn dumps() {
    let o = cli(&["--demo", "hackbusch", "--dump", "renormalized"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("g~ = (1/120)*exp(-σ^2)"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["potential", "--q", "0,1", "--qp", "1/2,2"]).status.code(), Some(2));
    assert_eq!(cli(&["potential", "--q", "1,0", "--qp", "0,1"]).status.code(), Some(2));
    assert_eq!(cli(&["potential", "--q", "0,1", "--qp", "2,3", "--n", "1,1"]).status.code(), Some(2));
    assert_eq!(cli(&["force", "--axis", "4", "--q", "0,1;0,1;0,1", "--qp", "1,2;0,1;0,1"]).status.code(), Some(2));
    let cube = "0,1;0,1;0,1";
    assert_eq!(cli(&["inverse-cube", "--q", cube, "--qp", cube]).status.code(), Some(3));
    assert_eq!(cli(&["potential", "--q", cube, "--qp", cube, "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn point_force() {
    let o = cli(&["point", "--q", "1,2;1,2;-1,1", "--y", "0,0,0", "--n", "0,0,3", "--axis", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("status: "));
}
