//! Print the ambient real forms found for every shipped embedding.

use liereal::ssub::{builtin_embeddings, SOptions, SProblem};
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SOptions::default();
    for emb in builtin_embeddings()? {
        let t = Instant::now();
        let p = SProblem::new(&emb)?;
        for r in p.run_all(&opts)? {
            println!(
                "{:<18} {:<22} A={} fam={} -> {:?} undetermined={} {:?}",
                emb.name,
                r.sub_form,
                r.a_space_dim,
                r.family_dim,
                r.labels,
                r.undetermined_components,
                r.components.iter().map(|c| (c.trace, c.dimension)).collect::<Vec<_>>()
            );
        }
        println!("  ({:.2?})", t.elapsed());
    }
    Ok(())
}
