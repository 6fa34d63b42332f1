use std::fs;
use std::path::{Path, PathBuf};

use matt::checker::{check_program, expected_verdicts};
use matt::mode_theory::ModeTheory;
use matt::syntax::parse_file;
use matt::syntax::surface::DeclKind;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus")
}

fn run(path: &Path) -> Vec<String> {
    let src = fs::read_to_string(path).unwrap();
    let decls = parse_file(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let header = decls
        .iter()
        .find_map(|d| match &d.kind {
            DeclKind::ModeTheory(p) => Some(p.clone()),
            _ => None,
        })
        .expect("mode-theory header");
    let mt_path = path.parent().unwrap().join(header);
    let mt = ModeTheory::from_json(&fs::read_to_string(&mt_path).unwrap()).unwrap();
    let report = check_program(&mt, &decls);
    let expected = expected_verdicts(&src, &decls).unwrap();
    let got = report.verdicts();
    let mut problems = Vec::new();
    for (name, want) in &expected {
        let have = got.get(name).cloned().flatten();
        if have != *want {
            let detail = report
                .outcomes
                .iter()
                .filter(|o| &o.name == name)
                .filter_map(|o| o.result.as_ref().err())
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            problems.push(format!(
                "{}: {name}: expected {want:?}, got {have:?} {detail}",
                path.file_name().unwrap().to_string_lossy()
            ));
        }
    }
    problems
}

#[test]
fn every_corpus_file_matches_its_expectations() {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "matt"))
        .collect();
    files.sort();
    assert!(files.len() >= 12);
    let problems: Vec<String> = files.iter().flat_map(|f| run(f)).collect();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn corpus_sizes() {
    let mut positives = 0;
    let mut negatives = 0;
    for entry in fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        let src = fs::read_to_string(&path).unwrap();
        let decls = parse_file(&src).unwrap();
        for (_, v) in expected_verdicts(&src, &decls).unwrap() {
            match v {
                None => positives += 1,
                Some(_) => negatives += 1,
            }
        }
    }
    assert!(negatives >= 15, "{negatives} negatives");
    assert!(positives >= 25, "{positives} positives");
}
