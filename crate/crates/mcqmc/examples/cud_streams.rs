//! Tour of the innovation streams: the inexhaustible IID reference, the two
//! full-period deterministic kinds (multiplicative LCG and Tausworthe LFSR),
//! and the mod-1 shift that turns a deterministic sequence into a randomized
//! one while keeping its equidistribution structure.

use mcqmc::streams::{InnovationStream, StreamSpec};

fn main() -> mcqmc::Result<()> {
    for spec in [
        StreamSpec::iid(1),
        StreamSpec::cud_lcg(0, 1020),
        StreamSpec::cud_lfsr(0, 1023),
    ] {
        let mut stream = InnovationStream::from_spec(&spec)?;
        let head = stream.take_scalars(5)?;
        println!(
            "{:?} (period {:?}): {:?}",
            spec.kind,
            stream.period(),
            head.iter().map(|u| (u * 1e4).round() / 1e4).collect::<Vec<_>>()
        );
    }

    // a full-period LCG emits every residue k/m (k = 1..m-1) exactly once
    let spec = StreamSpec::cud_lcg(0, 1020);
    let mut stream = InnovationStream::from_spec(&spec)?;
    let all = stream.take_scalars(1020)?;
    let mean = all.iter().sum::<f64>() / all.len() as f64;
    println!("full-period LCG mean: {mean:.6} (exactly 1/2 by symmetry)");
    assert!(stream.next_scalar().is_err(), "stream must exhaust at its period");
    println!("and the stream refuses to wrap past its period");

    // the same sequence under two independent mod-1 shifts
    let base = InnovationStream::from_spec(&spec)?;
    for seed in [7, 8] {
        let mut shifted = base.randomized(seed)?;
        println!(
            "shift seed {seed}: first scalars {:?}",
            shifted
                .take_scalars(3)?
                .iter()
                .map(|u| (u * 1e4).round() / 1e4)
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}
