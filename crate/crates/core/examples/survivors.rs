//! Print the Cartan classes of a real form and every survivor of the
//! double-coset filters, before aggregation into rows.

use liereal::pipeline::{maximal_targets, resolve_form};
use liereal::regreal::{survivors, Budget, RealFormContext};

fn main() {
    let label = std::env::args().nth(1).unwrap_or_else(|| "su(2,2)".into());
    let r = resolve_form(&label).unwrap();
    let ctx = RealFormContext::new(&r.form, &r.rs, 1_000_000).unwrap();
    for (c, w) in ctx.classes.iter().zip(&ctx.real_weyl) {
        println!(
            "class {}: compact {} split {} |W(g,h)| {} noncompact imaginary {:?} real {:?}",
            c.id,
            c.compact_dim,
            c.noncompact_dim,
            w.order(),
            c.noncompact_imaginary,
            c.real
        );
    }
    for t in maximal_targets(&r.rs) {
        for s in survivors(&ctx, &t, None, Budget::default()).unwrap() {
            println!("{} class {} -> {}  psi {:?}", t.type_label, s.cartan, s.label, s.psi);
        }
    }
}
