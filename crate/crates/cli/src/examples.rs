//! The built-in worked examples: one automaton transcript, two trajectory
//! tables, one bit matrix. Test fixtures pin these byte-for-byte.

use collatz_bits::accel::accel_trajectory;
use collatz_bits::bitnum::OddNum;
use collatz_bits::stepper::syracuse_trajectory;

use crate::render::{
    render_compact_accel, render_compact_plain, render_matrix, render_transcript, MatrixLine,
};

pub struct Section {
    pub header: &'static str,
    pub body: String,
}

pub fn sections() -> Vec<Section> {
    let odd = |v: u64| OddNum::from_u64(v).expect("literal odd");
    let traj_31 = syracuse_trajectory(odd(31), 1000);
    let traj_63 = syracuse_trajectory(odd(63), 1000);
    let accel_63 = accel_trajectory(odd(63), 1000);
    let matrix: Vec<MatrixLine> = traj_63.rows.iter().map(MatrixLine::from_plain).collect();
    vec![
        Section {
            header: "== Example A: one reduced step from 467, automaton transcript ==",
            body: render_transcript(&odd(467)),
        },
        Section {
            header: "== Example B: reduced trajectory from 31 ==",
            body: render_compact_plain(&traj_31.rows),
        },
        Section {
            header: "== Example C: trajectory from 63, bits aligned, lowest zero marked ==",
            body: render_matrix(&matrix),
        },
        Section {
            header: "== Example D: accelerated trajectory from 63 ==",
            body: render_compact_accel(&accel_63.rows),
        },
    ]
}

pub fn render_all() -> String {
    let sections = sections();
    let mut out = String::new();
    for (i, section) in sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(section.header);
        out.push('\n');
        out.push_str(&section.body);
    }
    out
}
