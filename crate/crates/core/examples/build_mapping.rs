//! Assembles the 6-D 16-QAM mapping from its four 2-D components and maps
//! the label `0110 1111 0111` by hand and through the library.
//!
//! ```text
//! cargo run --release --example build_mapping
//! ```

use mdmap::fixtures::fixture;
use mdmap::Label;

fn main() -> mdmap::Result<()> {
    let mapping = fixture("16qam_4d")?.with_n(3)?;
    let label = Label::from_bits(&[0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1])?;
    let m = mapping.m();
    let chunks: Vec<u64> = (0..mapping.n()).map(|i| label.chunk(m, i)).collect();
    println!(
        "label {label}, chunks {chunks:?}, weight {} ({:?})",
        label.weight(),
        label.parity()
    );

    // Odd weight: the first chunk goes through lambda_ol, keyed by its
    // low m-1 bits, the rest through lambda_or.
    let half = 1usize << (m - 1);
    let first = mapping.lambda_ol().symbol(chunks[0] as usize % half);
    let rest: Vec<usize> = chunks[1..]
        .iter()
        .map(|&c| mapping.lambda_or().symbol(c as usize))
        .collect();
    println!(
        "by hand: S{} {}",
        first + 1,
        rest.iter()
            .map(|s| format!("S{}", s + 1))
            .collect::<Vec<_>>()
            .join(" ")
    );

    let symbols = mapping.map_label(label)?;
    println!(
        "library: {}",
        symbols
            .iter()
            .map(|s| format!("S{}", s + 1))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let back = mapping.demap(&symbols).expect("bijective");
    println!("demapped: {back}");
    Ok(())
}
