use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sparsify_core::interchange::summarize_arrays;
use sparsify_core::io::npy;
use sparsify_core::synth::{barabasi_albert, erdos_renyi};
use sparsify_core::{
    load_graph, read_report, save_graph, Graph, GraphLocation, InputSpec, Method, Params, Phase,
    SparsifierConfig,
};

fn sparsify(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsify"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn error_class(out: &Output) -> Option<String> {
    let err = stderr(out);
    let line = err.lines().find(|l| l.starts_with("error["))?;
    Some(line["error[".len()..line.find(']')?].to_string())
}

fn write_native(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let path = dir.join(name);
    save_graph(g, &GraphLocation::NativeEdgeList { path: path.clone() }).unwrap();
    path
}

fn reports_in(dir: &Path) -> usize {
    fs::read_dir(dir)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"))
        .count()
}

fn summary_rows(dir: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(dir.join("summary.tsv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

#[test]
fn run_writes_graph_and_report() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("edges.csv"), "src,dst\n0,1\n1,2\n2,0\n2,3\n3,4\n4,2\n").unwrap();
    let out = sparsify(
        dir.path(),
        &["run", "--input", "edges.csv", "--method", "k-neighbor", "--k", "5", "--seed", "7", "--out", "g.bin", "--report", "r.json"],
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let (g, _) = load_graph(&InputSpec::new(GraphLocation::infer(dir.path().join("g.bin")))).unwrap();
    assert_eq!(g.num_edges(), 6);
    let report = read_report(&dir.path().join("r.json")).unwrap();
    assert_eq!(report.seed, 7);
    assert_eq!(report.input.edges, 6);
    assert_eq!(report.output.edge_reduction_pct, 0.0);
    assert!(report.threads >= 1);
    assert_eq!(report.timing.phases.len(), 6);
    let sum: u64 = report.timing.phases.iter().map(|p| p.millis).sum();
    assert_eq!(sum, report.timing.total_millis);
}

#[test]
fn report_goes_to_stdout_without_report_flag() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &erdos_renyi(30, 0.2, 1));
    let out = sparsify(dir.path(), &["run", "--input", "g.bin", "--method", "local-degree", "--out", "o.csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = sparsify_core::RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.config.method.method(), Method::LocalDegree);
}

#[test]
fn rank_degree_without_seeds_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &erdos_renyi(30, 0.2, 1));
    let out = sparsify(dir.path(), &["run", "--input", "g.bin", "--method", "rank-degree", "--out", "o.bin"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_class(&out).as_deref(), Some("validation"));
    assert!(!dir.path().join("o.bin").exists());
}

#[test]
fn removal_ratio_one_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &erdos_renyi(30, 0.2, 1));
    let out = sparsify(
        dir.path(),
        &["run", "--input", "g.bin", "--method", "random", "--removal-ratio", "1.0", "--out", "o.bin"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_class(&out).as_deref(), Some("validation"));
    assert_eq!(stderr(&out).lines().count(), 1);
}

#[test]
fn module_errors_surface_their_class() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "0,1\n1,two\n").unwrap();
    let out = sparsify(dir.path(), &["run", "--input", "bad.csv", "--method", "k-neighbor", "--out", "o.bin"]);
    assert_eq!(error_class(&out).as_deref(), Some("parse"));
    assert!(stderr(&out).contains("line 2"));

    let out = sparsify(dir.path(), &["run", "--input", "missing.bin", "--method", "k-neighbor", "--out", "o.bin"]);
    assert_eq!(error_class(&out).as_deref(), Some("io"));

    npy::write_i64(&dir.path().join("s.npy"), &[0, 1, 2]).unwrap();
    npy::write_i64(&dir.path().join("d.npy"), &[1, 2]).unwrap();
    let out = sparsify(
        dir.path(),
        &["run", "--src", "s.npy", "--dst", "d.npy", "--method", "k-neighbor", "--out", "o.bin"],
    );
    assert_eq!(error_class(&out).as_deref(), Some("format"));

    fs::write(dir.path().join("seeds.txt"), "1\n99\n").unwrap();
    write_native(dir.path(), "g.bin", &erdos_renyi(30, 0.2, 1));
    let out = sparsify(
        dir.path(),
        &["run", "--input", "g.bin", "--method", "rank-degree", "--seeds", "seeds.txt", "--out", "o.bin"],
    );
    assert_eq!(error_class(&out).as_deref(), Some("validation"));
}

#[test]
fn parameters_of_another_method_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &erdos_renyi(30, 0.2, 1));
    let out = sparsify(
        dir.path(),
        &["run", "--input", "g.bin", "--method", "k-neighbor", "--alpha", "0.5", "--out", "o.bin"],
    );
    assert_eq!(error_class(&out).as_deref(), Some("validation"));
}

#[test]
fn rank_degree_with_seed_file() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &barabasi_albert(200, 3, 4));
    fs::write(dir.path().join("seeds.txt"), "5\n1\n5\n").unwrap();
    let out = sparsify(
        dir.path(),
        &["run", "--input", "g.bin", "--method", "rank-degree", "--seeds", "seeds.txt", "--out", "o.bin", "--report", "r.json"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_report(&dir.path().join("r.json")).unwrap();
    let trace = report.rank_degree.unwrap();
    assert!(trace.covered_nodes >= 50 || trace.truncated);
    let json = fs::read_to_string(dir.path().join("r.json")).unwrap();
    assert!(json.contains("\"seeds\""));
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &barabasi_albert(3000, 4, 11));
    for method in ["random", "k-neighbor", "local-degree", "rank-degree"] {
        let mut outputs = Vec::new();
        for threads in ["1", "2", "8"] {
            let name = format!("{method}-{threads}.bin");
            let mut args = vec!["run", "--input", "g.bin", "--method", method, "--seed", "3", "--threads", threads, "--out", &name, "--report", "r.json"];
            if method == "rank-degree" {
                args.extend(["--random-seeds", "4"]);
            }
            let out = sparsify(dir.path(), &args);
            assert!(out.status.success(), "{}", stderr(&out));
            outputs.push(fs::read(dir.path().join(&name)).unwrap());
            assert_eq!(read_report(&dir.path().join("r.json")).unwrap().threads.to_string(), threads);
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{method}");
    }
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &barabasi_albert(500, 5, 2));
    fs::write(
        dir.path().join("cfg.toml"),
        "input = \"g.bin\"\nmethod = \"k-neighbor\"\nk = 2\nseed = 9\nout = \"from_config.bin\"\nreport = \"r.json\"\n",
    )
    .unwrap();
    let out = sparsify(dir.path(), &["run", "--config", "cfg.toml"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_report(&dir.path().join("r.json")).unwrap();
    assert_eq!(report.seed, 9);
    assert!(matches!(report.config.method, sparsify_core::MethodConfig::KNeighbor { k: 2 }));
    assert!(dir.path().join("from_config.bin").exists());

    let out = sparsify(dir.path(), &["run", "--config", "cfg.toml", "--k", "4", "--seed", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_report(&dir.path().join("r.json")).unwrap();
    assert_eq!(report.seed, 1);
    assert!(matches!(report.config.method, sparsify_core::MethodConfig::KNeighbor { k: 4 }));

    fs::write(dir.path().join("bad.toml"), "method = \"k-neighbor\"\nk = \"many\"\n").unwrap();
    let out = sparsify(dir.path(), &["run", "--config", "bad.toml"]);
    assert_eq!(error_class(&out).as_deref(), Some("parse"));
}

#[test]
fn k_neighbor_sweep_reduction_falls_with_k() {
    let dir = tempfile::tempdir().unwrap();
    let g = barabasi_albert(4000, 6, 5);
    assert!(g.degrees().into_iter().max().unwrap() > 10);
    write_native(dir.path(), "g.bin", &g);
    let out = sparsify(dir.path(), &["sweep", "--input", "g.bin", "--method", "k-neighbor", "--out-dir", "sw"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let sw = dir.path().join("sw");
    assert_eq!(reports_in(&sw), 3);
    let rows = summary_rows(&sw);
    let cells: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(cells, ["k-neighbor__k=3__seed=0", "k-neighbor__k=5__seed=0", "k-neighbor__k=10__seed=0"]);
    let reductions: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(reductions.windows(2).all(|w| w[0] > w[1]), "{reductions:?}");
    for r in &rows {
        assert!(sw.join(format!("{}.bin", r[0])).exists());
    }
}

#[test]
fn rank_degree_sweep_has_nine_cells() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &barabasi_albert(800, 4, 6));
    let out = sparsify(
        dir.path(),
        &["sweep", "--input", "g.bin", "--method", "rank-degree", "--random-seeds", "20", "--out-dir", "sw"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(reports_in(&dir.path().join("sw")), 9);
    assert_eq!(summary_rows(&dir.path().join("sw")).len(), 9);
}

#[test]
fn empty_grid_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &erdos_renyi(30, 0.2, 1));
    let out = sparsify(dir.path(), &["sweep", "--input", "g.bin", "--method", "k-neighbor", "--k", "--out-dir", "sw"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_class(&out).as_deref(), Some("validation"));
}

#[test]
fn summary_rows_equal_grid_size_minus_failures() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &barabasi_albert(500, 3, 8));
    let cases = [
        ("k-neighbor", "--k", "0,3,5", 1),
        ("local-degree", "--alpha", "-0.5,0.25,1.0,2", 2),
        ("local-degree", "--alpha", "0.1,0.2", 0),
    ];
    for (method, flag, grid, failing) in cases {
        let value = format!("{flag}={grid}");
        let out = sparsify(dir.path(), &["sweep", "--input", "g.bin", "--method", method, &value, "--out-dir", "sw", "--concurrent"]);
        let cells = grid.split(',').count();
        let rows = summary_rows(&dir.path().join("sw"));
        assert_eq!(rows.len(), cells - failing, "{grid}: {}", stderr(&out));
        let failures = fs::read_to_string(dir.path().join("sw/failures.tsv")).unwrap_or_default();
        assert_eq!(failures.lines().count().saturating_sub(1), failing, "{grid}");
        assert_eq!(out.status.code(), Some(if failing > 0 { 2 } else { 0 }), "{grid}");
        fs::remove_dir_all(dir.path().join("sw")).unwrap();
    }
}

#[test]
fn concurrent_sweep_matches_sequential() {
    let dir = tempfile::tempdir().unwrap();
    write_native(dir.path(), "g.bin", &barabasi_albert(2000, 4, 9));
    let a = sparsify(dir.path(), &["sweep", "--input", "g.bin", "--method", "random", "--seed-per-cell", "--out-dir", "a"]);
    let b = sparsify(dir.path(), &["sweep", "--input", "g.bin", "--method", "random", "--seed-per-cell", "--out-dir", "b", "--concurrent"]);
    assert!(a.status.success() && b.status.success());
    let strip = |rows: Vec<Vec<String>>| rows.into_iter().map(|r| (r[0].clone(), r[1].clone())).collect::<Vec<_>>();
    assert_eq!(strip(summary_rows(&dir.path().join("a"))), strip(summary_rows(&dir.path().join("b"))));
    for r in summary_rows(&dir.path().join("a")) {
        let name = format!("{}.bin", r[0]);
        assert_eq!(fs::read(dir.path().join("a").join(&name)).unwrap(), fs::read(dir.path().join("b").join(&name)).unwrap());
    }
}

#[test]
fn generate_writes_requested_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = sparsify(dir.path(), &["generate", "--model", "ba", "--nodes", "100", "--m", "2", "--seed", "3", "--out", "g.csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let spec = InputSpec::new(GraphLocation::infer(dir.path().join("g.csv"))).with_num_nodes(100);
    assert_eq!(load_graph(&spec).unwrap().0, barabasi_albert(100, 2, 3));
}

/// Array interface and CLI with paired `.npy` files agree on 50 random
/// (graph, method, seed) triples.
#[test]
fn array_interface_matches_cli() {
    let dir = tempfile::tempdir().unwrap();
    for t in 0..50u64 {
        let g = if t % 2 == 0 {
            erdos_renyi(20 + t as usize, 0.15, t)
        } else {
            barabasi_albert(40 + 3 * t as usize, 2, t)
        };
        let (src, dst): (Vec<i64>, Vec<i64>) = g.edges().iter().map(|&(u, v)| (v as i64, u as i64)).unzip();
        npy::write_i64(&dir.path().join("s.npy"), &src).unwrap();
        npy::write_i64(&dir.path().join("d.npy"), &dst).unwrap();
        let n = g.num_nodes().to_string();
        let seed = (t * 31).to_string();

        let method = Method::ALL[(t % 4) as usize];
        let mut params = Params::default();
        let mut extra: Vec<&str> = Vec::new();
        if method == Method::RankDegree {
            params.random_seeds = Some(2);
            extra.extend(["--random-seeds", "2"]);
        }
        let cfg = SparsifierConfig::from_params(method, params, t * 31).unwrap();
        let via_arrays = summarize_arrays(&src, &dst, Some(g.num_nodes()), &cfg).unwrap();
        assert!(via_arrays.report.timing.phases.iter().any(|p| p.name == Phase::ToInternal));
        assert!(via_arrays.report.timing.phases.iter().any(|p| p.name == Phase::Export));

        let mut args = vec!["run", "--src", "s.npy", "--dst", "d.npy", "--num-nodes", &n, "--method", method.name(), "--seed", &seed, "--out", "o.npy", "--report", "r.json"];
        args.extend(extra);
        let out = sparsify(dir.path(), &args);
        assert!(out.status.success(), "{}", stderr(&out));
        let cli_src = npy::read_i64(&dir.path().join("o.src.npy")).unwrap();
        let cli_dst = npy::read_i64(&dir.path().join("o.dst.npy")).unwrap();
        assert_eq!((cli_src, cli_dst), (via_arrays.src, via_arrays.dst), "triple {t} {method}");
    }
}
