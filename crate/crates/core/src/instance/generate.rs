use rand::Rng;

use super::{
    GenerationProfile, Instance, Line, Machine, MachineId, ProcessingTimes, Specimen, StageKind, TestKind, ROUTE_LEN,
};
use crate::error::{Error, Result};
use crate::rng;

/// Builds `INSTANCE_{n_bio}_{n_immuno}_{idx}`.
///
/// Specimens `1..=n_bio` are biochemical, the rest immunologic. Every time
/// `P(i, j, l)` is an inclusive uniform integer draw from the profile bounds
/// of the operation's stage on line `l`, taken from its own sub-stream keyed by
/// `(seed, n_bio, n_immuno, idx, i, j, l)`.
pub fn generate_instance(
    profile: &GenerationProfile,
    n_bio: usize,
    n_immuno: usize,
    idx: usize,
    seed: u64,
) -> Result<Instance> {
    let n = n_bio + n_immuno;
    if n == 0 {
        return Err(Error::invalid("instance needs at least one specimen"));
    }
    if profile.lines.is_empty() {
        return Err(Error::invalid("profile has no lines"));
    }

    let lines = profile
        .lines
        .iter()
        .enumerate()
        .map(|(l, lp)| {
            let mut machines = Vec::new();
            for stage in StageKind::ALL {
                let spec = lp.stage(stage);
                for _ in 0..spec.count {
                    machines.push(Machine {
                        id: MachineId::new(l + 1, machines.len() + 1),
                        stage,
                        capacity: spec.capacity,
                    });
                }
            }
            Line { machines }
        })
        .collect::<Vec<_>>();

    let specimens = (1..=n as u32)
        .map(|id| {
            let kind = if (id as usize) <= n_bio {
                TestKind::Biochemical
            } else {
                TestKind::Immunologic
            };
            Specimen {
                id,
                kind,
                route: kind.route(),
            }
        })
        .collect::<Vec<_>>();

    let mut times = ProcessingTimes::new(n, ROUTE_LEN, lines.len());
    for s in &specimens {
        for (j, &stage) in s.route.iter().enumerate() {
            for l in 1..=lines.len() {
                let spec = profile.line(l).stage(stage);
                let mut r = rng::stream(
                    seed,
                    &[
                        n_bio as u64,
                        n_immuno as u64,
                        idx as u64,
                        u64::from(s.id),
                        j as u64 + 1,
                        l as u64,
                    ],
                );
                times.set(s.id, j + 1, l, r.gen_range(spec.lower..=spec.upper))?;
            }
        }
    }

    Ok(Instance {
        name: format!("INSTANCE_{n_bio}_{n_immuno}_{idx}"),
        seed,
        lines,
        specimens,
        times,
    })
}

/// One `(n_bio, n_immuno, idx)` cell of a benchmark family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchmarkSpec {
    pub n_bio: usize,
    pub n_immuno: usize,
    pub idx: usize,
}

/// Sizes 2, 4, 6, 8 at a 1:1 ratio, five instances each.
pub fn toy_benchmark() -> Vec<BenchmarkSpec> {
    let mut out = Vec::new();
    for n in [2, 4, 6, 8] {
        for idx in 1..=5 {
            out.push(BenchmarkSpec {
                n_bio: n / 2,
                n_immuno: n / 2,
                idx,
            });
        }
    }
    out
}

/// Sizes 100..=500 at ratios 1:4, 1:1, 4:1, ten instances each.
pub fn realistic_benchmark() -> Vec<BenchmarkSpec> {
    let mut out = Vec::new();
    for n in [100, 200, 300, 400, 500] {
        for (bio, immuno) in [(1, 4), (1, 1), (4, 1)] {
            let unit = n / (bio + immuno);
            for idx in 1..=10 {
                out.push(BenchmarkSpec {
                    n_bio: unit * bio,
                    n_immuno: unit * immuno,
                    idx,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{realistic_profile, toy_profile};

    #[test]
    fn naming_and_size() {
        let inst = generate_instance(&realistic_profile(), 20, 80, 5, 1).unwrap();
        assert_eq!(inst.name, "INSTANCE_20_80_5");
        assert_eq!(inst.specimen_count(), 100);
        assert_eq!(inst.specimens[19].kind, TestKind::Biochemical);
        assert_eq!(inst.specimens[20].kind, TestKind::Immunologic);
    }

    #[test]
    fn deterministic() {
        let a = generate_instance(&toy_profile(), 3, 4, 2, 99).unwrap();
        let b = generate_instance(&toy_profile(), 3, 4, 2, 99).unwrap();
        assert_eq!(a, b);
        let c = generate_instance(&toy_profile(), 3, 4, 3, 99).unwrap();
        assert_ne!(a.times, c.times);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(matches!(
            generate_instance(&toy_profile(), 0, 0, 1, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn toy_immuno_times_on_line_one() {
        let inst = generate_instance(&toy_profile(), 2, 2, 1, 5).unwrap();
        for s in inst.specimens.iter().filter(|s| s.kind == TestKind::Immunologic) {
            let t = inst.time(s.id, 3, 1);
            assert!((1080..=1800).contains(&t), "{t}");
        }
    }

    #[test]
    fn benchmark_counts() {
        assert_eq!(toy_benchmark().len(), 20);
        let real = realistic_benchmark();
        assert_eq!(real.len(), 150);
        assert!(real.iter().all(|s| (s.n_bio + s.n_immuno) % 100 == 0));
        assert!(real.contains(&BenchmarkSpec {
            n_bio: 20,
            n_immuno: 80,
            idx: 5
        }));
        assert!(real.contains(&BenchmarkSpec {
            n_bio: 100,
            n_immuno: 400,
            idx: 5
        }));
    }
}
