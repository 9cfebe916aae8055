//! Drive the `kpencil` command set in-process on the bundled data files.

use std::path::Path;

use kronecker_pencil::cli;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let dir = std::env::temp_dir().join("kpencil-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let pencil = dir.join("pencil.json");
    let solved = dir.join("solved.json");
    let p = |path: &Path| path.to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["linearize".into(), p(&data.join("order2_scalar.json")), "--out".into(), p(&pencil)],
        vec!["analyze".into(), p(&pencil), "--invariant-factors".into()],
        vec!["solve".into(), p(&pencil), "--steps".into(), "4".into(), "--out".into(), p(&solved)],
        vec!["verify".into(), p(&pencil), p(&solved)],
        vec!["oracle".into(), p(&pencil)],
        vec!["solve".into(), p(&data.join("regular_inconsistent.json"))],
    ];
    for args in runs {
        println!("$ kpencil {}", args.join(" "));
        let argv = std::iter::once("kpencil".to_string()).chain(args).map(std::ffi::OsString::from);
        let code = cli::run(argv, &mut std::io::stdout(), &mut std::io::stderr());
        println!("exit {code}\n");
    }
}
