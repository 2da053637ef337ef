//! Regenerate data/embeddings/*.json: search ±1 sign patterns on the given
//! root supports, validate, and write one file per embedding.

use liereal::rootsys::RootSystem;
use liereal::ssub::search_embedding;

struct Spec {
    name: &'static str,
    sub: &'static str,
    ambient: &'static str,
    maximal: bool,
    supports: &'static [&'static [&'static [i32]]],
}

const SPECS: &[Spec] = &[
    Spec { name: "A1-principal-A2", sub: "A1", ambient: "A2", maximal: true, supports: &[&[&[1, 0], &[0, 1]]] },
    Spec { name: "A1-principal-B2", sub: "A1", ambient: "B2", maximal: true, supports: &[&[&[1, 0], &[0, 1]]] },
    Spec { name: "A1-principal-G2", sub: "A1", ambient: "G2", maximal: true, supports: &[&[&[1, 0], &[0, 1]]] },
    Spec { name: "A1-principal-C3", sub: "A1", ambient: "C3", maximal: true, supports: &[&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]] },
    Spec { name: "B2-A3", sub: "B2", ambient: "A3", maximal: true, supports: &[&[&[0, 1, 0]], &[&[1, 0, 0], &[0, 0, 1]]] },
    Spec {
        name: "A1xA1-A3",
        sub: "A1+A1",
        ambient: "A3",
        maximal: true,
        supports: &[&[&[1, 1, 0], &[0, 1, 1]], &[&[1, 0, 0], &[0, 0, 1]]],
    },
    Spec { name: "G2-B3", sub: "G2", ambient: "B3", maximal: true, supports: &[&[&[1, 0, 0], &[0, 0, 1]], &[&[0, 1, 0]]] },
    Spec {
        name: "A1xA1-C3",
        sub: "A1+A1",
        ambient: "C3",
        maximal: true,
        supports: &[&[&[1, 1, 1], &[0, 2, 1]], &[&[1, 0, 0], &[0, 1, 0]]],
    },
    Spec {
        name: "B3-D4",
        sub: "B3",
        ambient: "D4",
        maximal: true,
        supports: &[&[&[1, 0, 0, 0]], &[&[0, 1, 0, 0]], &[&[0, 0, 1, 0], &[0, 0, 0, 1]]],
    },
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/embeddings");
    std::fs::create_dir_all(&out)?;
    for s in SPECS {
        let rs = RootSystem::parse(s.ambient)?;
        let supports: Vec<Vec<usize>> = s
            .supports
            .iter()
            .map(|g| g.iter().map(|r| rs.index_of(r).expect("root")).collect())
            .collect();
        let mut emb = search_embedding(s.name, s.sub, s.ambient, &supports)?;
        emb.maximal = s.maximal;
        std::fs::write(out.join(format!("{}.json", s.name)), emb.to_json() + "\n")?;
        println!("{} {} ⊂ {} index {:?}", s.name, s.sub, s.ambient, emb.dynkin_index);
    }
    Ok(())
}
