//! Free products of finite groups: normal forms, the pro-isomorphism
//! decision, a verified ladder, and a bounded ladder refutation.

use std::sync::Arc;

use jester::data;
use jester::prosequences::{
    build_ladder, ladder_verify, pro_isomorphic, refute_ladders, FiniteGroup, FreeProduct, FreeProductWord,
};

fn main() -> anyhow::Result<()> {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let g = FreeProduct::new(vec![z2.clone(), z3.clone(), z2]);
    let w = FreeProductWord::new(vec![(0, 1), (0, 1), (1, 1), (2, 1), (1, 2)]);
    let n = g.normal_form(&w)?;
    println!("{w} -> {n}; projection drops the last factor: {}", g.projection(&n)?);

    let sa = data::sequence(data::Z2_Z3_SEQ_JSON);
    let sb = data::sequence(data::Z3_Z2_SEQ_JSON);
    let r = pro_isomorphic(&sa, &sb)?;
    println!("Z2,Z3 vs Z3,Z2: {}", r.decision);
    if let Some(l) = build_ladder(&sa, &sb, 4)? {
        println!("ladder G{:?} / H{:?} verifies: {}", l.left, l.right, ladder_verify(&sa, &sb, &l, 4)?);
    }

    let sa = data::sequence(data::Z2_Z5_SEQ_JSON);
    let sb = data::sequence(data::Z2_NO_Z5_SEQ_JSON);
    let r = pro_isomorphic(&sa, &sb)?;
    println!("with and without Z5: {} ({})", r.decision, serde_json::to_string(&r.certificate)?);
    println!("ladder search: {:?}", refute_ladders(&sa, &sb, 3, 1_000_000)?);
    Ok(())
}
