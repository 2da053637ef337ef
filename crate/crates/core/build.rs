use std::fmt::Write as _;
use std::path::Path;

fn index(sub: &str, var: &str, file: &str) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(sub);
    println!("cargo:rerun-if-changed={}", dir.display());
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .expect("data directory")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    let mut src = format!("pub static {var}: &[(&str, &str)] = &[\n");
    for n in &names {
        let stem = n.trim_end_matches(".json");
        writeln!(src, "    ({stem:?}, include_str!({:?})),", dir.join(n).display().to_string()).unwrap();
    }
    src.push_str("];\n");
    let out = Path::new(&std::env::var("OUT_DIR").unwrap()).join(file);
    std::fs::write(out, src).unwrap();
}

fn main() {
    index("golden", "TABLES", "golden_index.rs");
    index("embeddings", "EMBEDDINGS", "embedding_index.rs");
}
