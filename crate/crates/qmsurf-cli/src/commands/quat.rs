use std::fmt::Write as _;

use qmsurf_core::quaternion::{
    check_structure, check_triple, discriminant, embeds, is_hereditary, ramified_set, Place,
};

use crate::Result;

#[derive(Debug, Clone)]
pub enum QuatOp {
    Disc { a: i64, b: i64 },
    Embed { m: i64, disc: u64 },
    Triple { m1: i64, m2: i64, m3: i64, disc: u64 },
    Hereditary { disc: u64 },
    Structure { disc: u64, delta: u64, m: i64 },
}

#[derive(Debug, Clone)]
pub struct QuatArgs {
    pub op: QuatOp,
}

pub fn cmd_quat(args: &QuatArgs) -> Result<String> {
    let mut out = String::new();
    match &args.op {
        QuatOp::Disc { a, b } => {
            let ram = ramified_set(*a, *b)?;
            let d = discriminant(*a, *b)?;
            let places: Vec<String> = ram
                .iter()
                .map(|pl| match pl {
                    Place::Finite(p) => p.to_string(),
                    Place::Infinity => "oo".to_string(),
                })
                .collect();
            let _ = writeln!(out, "algebra ({a}, {b} / Q)");
            let _ = writeln!(out, "ramified places: {{{}}}", places.join(", "));
            let _ = writeln!(out, "reduced discriminant: {d}");
            let _ = writeln!(
                out,
                "{}",
                if ram.contains(&Place::Infinity) { "definite" } else { "indefinite" }
            );
        }
        QuatOp::Embed { m, disc } => {
            let ok = embeds(*m, *disc)?;
            let _ = writeln!(
                out,
                "Q(sqrt {m}) {} the quaternion algebra of discriminant {disc}",
                if ok { "embeds into" } else { "does NOT embed into" }
            );
        }
        QuatOp::Triple { m1, m2, m3, disc } => {
            let ok = check_triple(*m1, *m2, *m3, *disc)?;
            let _ = writeln!(
                out,
                "fields Q(sqrt {m1}), Q(sqrt {m2}), Q(sqrt {m3}) {} as the intermediate algebras of B_{disc}",
                if ok { "are consistent" } else { "are NOT consistent" }
            );
        }
        QuatOp::Hereditary { disc } => {
            let _ = writeln!(
                out,
                "an order of reduced discriminant {disc} is {}hereditary (squarefree: {})",
                if is_hereditary(*disc) { "" } else { "NOT " },
                if is_hereditary(*disc) { "yes" } else { "no" }
            );
        }
        QuatOp::Structure { disc, delta, m } => {
            let ok = check_structure(*disc, *delta, *m)?;
            let _ = writeln!(
                out,
                "(-{disc}*{delta}, {m} / Q) {} discriminant {disc}",
                if ok { "has" } else { "does NOT have" }
            );
        }
    }
    Ok(out)
}
