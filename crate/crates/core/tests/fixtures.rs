//! The files under `fixtures/` must match what the library builds.
//! Run with `MLG_BLESS=1` to rewrite them.

use std::path::PathBuf;

use mlg_core::fragments::catalogue;
use mlg_core::prosody::{news_style_track, PitchTrack};
use mlg_core::rank::{load_manifest, toy_architecture, toy_architecture_files};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn expected() -> Vec<(PathBuf, String)> {
    let dir = fixtures();
    let mut files: Vec<(PathBuf, String)> = catalogue()
        .into_iter()
        .map(|e| (dir.join(e.file), (e.build)().to_text()))
        .collect();
    for (name, content) in toy_architecture_files() {
        files.push((dir.join("toy_arch").join(name), content));
    }
    files.push((dir.join("news_style.csv"), news_style_track().to_csv()));
    // eleven CV syllables carrying the surface tones of the Tem sentence
    let surface = ["l", "l", "h", "l", "l", "h", "l", "l", "h", "l", "h"];
    let rows = |f: &dyn Fn(usize) -> String| (0..11).map(|i| format!("morpheme\t{}\t{}\t{}\n", f(i), 2 * i, 2 * i + 2)).collect();
    files.push((dir.join("streams/syllables.tsv"), rows(&|_| "SYL".to_string())));
    files.push((dir.join("streams/tones.tsv"), rows(&|i| surface[i].to_string())));
    files
}

#[test]
fn fixtures_match_the_library() {
    let bless = std::env::var_os("MLG_BLESS").is_some();
    for (path, content) in expected() {
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &content).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, content, "{} is stale; rerun with MLG_BLESS=1", path.display());
    }
}

#[test]
fn toy_manifest_loads_from_disk() {
    let arch = load_manifest(&fixtures().join("toy_arch/manifest.toml")).unwrap();
    assert_eq!(arch, toy_architecture());
}

#[test]
fn news_style_csv_round_trips() {
    let text = std::fs::read_to_string(fixtures().join("news_style.csv")).unwrap();
    let track = PitchTrack::from_csv(&text, "news-style").unwrap();
    assert_eq!(track, news_style_track());
}
