//! Every `tests/corpus/*.job.json` must reproduce its `.expected.json` sibling.
//! Set `JETRES_BLESS=1` to rewrite the expected documents.

use std::fs;
use std::path::{Path, PathBuf};

use jetres_cli::{render, run_job, Job, RunOptions};

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut jobs: Vec<PathBuf> = fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.to_string_lossy().ends_with(".job.json"))
        .collect();
    jobs.sort();
    jobs
}

fn expected_path(job: &Path) -> PathBuf {
    PathBuf::from(job.to_string_lossy().replace(".job.json", ".expected.json"))
}

#[test]
fn corpus_matches_expected() {
    let bless = std::env::var_os("JETRES_BLESS").is_some();
    let opts = RunOptions {
        verify: true,
        ..RunOptions::default()
    };
    let jobs = corpus();
    assert!(jobs.len() >= 10);
    for path in jobs {
        let job = Job::parse(&fs::read_to_string(&path).unwrap()).unwrap();
        let out = run_job(&job, &opts).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(out.verified, "{}: verification failed", path.display());
        let text = render(&out.document);
        let expected = expected_path(&path);
        if bless {
            fs::write(&expected, &text).unwrap();
            continue;
        }
        let want = fs::read_to_string(&expected).unwrap_or_else(|_| panic!("missing {}", expected.display()));
        assert_eq!(text, want, "{}", path.display());
    }
}

#[test]
fn pinned_values() {
    let value = |name: &str, pointer: &str| {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name);
        let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        doc.pointer(pointer).unwrap().clone()
    };
    assert_eq!(value("residue_grassmannian.expected.json", "/result/value/text"), "2");
    // 10d - 4d^2 at d = 4
    assert_eq!(value("integral_n2_k1_u3.expected.json", "/result/at_d/value/num"), "-24");
    assert_eq!(
        value("ggl_n2.expected.json", "/result/p/text"),
        "1673448107540480*d^2 - 1159632923582005248*d - 586602278193987584"
    );
    assert_eq!(value("ggl_n2.expected.json", "/result/certified"), true);
    assert_eq!(value("ample_mixed.expected.json", "/result/classification"), "relatively_ample");
    assert_eq!(value("fixed_points_n2_k2.expected.json", "/result/count"), 4);
}
