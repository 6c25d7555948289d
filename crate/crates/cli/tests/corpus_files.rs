//! The files under corpus/ are the printed form of the built-in corpus.
//! Regenerate with RAMCC_BLESS=1.

use ramcc_cli::document::{Document, Extension, Options, Representation, TermKind, TermSpec};
use ramcc_core::corpus::corpus;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn document(e: &ramcc_core::corpus::CorpusEntry) -> Document {
    let representation = (e.name == "as-p3-x").then(|| Representation {
        reps: vec![("anchor".into(), vec![TermSpec { mult: 1, kind: TermKind::Char(vec![0, 2, 1]) }])],
        auto: Some(ramcc_cli::document::Auto::All),
        psi0: None,
    });
    Document {
        p: e.p,
        precision: None,
        extension: Some(Extension { n: e.n, coeffs: e.coeffs.clone(), conjugates: vec![] }),
        abstract_data: None,
        representation,
        triple: None,
        options: Options::default(),
    }
}

#[test]
fn corpus_files_match_builtin_corpus() {
    let bless = std::env::var_os("RAMCC_BLESS").is_some();
    for e in corpus() {
        let text = format!("# {}\n{}", e.name, document(&e).print());
        let path = corpus_dir().join(format!("{}.ramcc", e.name));
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_default();
        assert_eq!(on_disk, text, "{} is stale; rerun with RAMCC_BLESS=1", path.display());
        assert_eq!(Document::parse(&on_disk).unwrap(), document(&e));
    }
}
