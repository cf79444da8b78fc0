//! Reduce mark sequences and find the most likely marks on a vertex tuple.
use uniform_attachment::copies::most_likely_marks;
use uniform_attachment::marks::terminal_shape;
use uniform_attachment::{f_number, reduce_mark_sequence, MarkSequence, PatternGraph};

fn main() -> uniform_attachment::Result<()> {
    for digits in ["0222", "0132", "01112", "0303"] {
        let ms = MarkSequence::from_digits(digits)?;
        let red = reduce_mark_sequence(&ms);
        println!(
            "{digits}: f = {}, reduced to {:?} in {} moves, shape {:?}",
            f_number(ms.as_slice()),
            red.end.as_slice(),
            red.trace.len(),
            terminal_shape(red.end.as_slice())
        );
    }
    let (p, best) = most_likely_marks(&PatternGraph::cycle(4)?, &[2, 3, 5, 9], 2)?;
    println!("4-cycle on (2,3,5,9): max probability {p:.3e} by {:?}", best.iter().map(|b| b.as_slice()).collect::<Vec<_>>());
    Ok(())
}
