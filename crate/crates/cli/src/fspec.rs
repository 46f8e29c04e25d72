//! Compact `--f` syntax for budget functions.
//!
//! ```text
//! cardinality
//! uniform:K
//! partition:0,1|2,3:1,2.5       blocks separated by '|', then one cap per block
//! threshold:w0,w1,...:CAP
//! table:SEED | graphic:SEED | matroid:SEED
//! {"family": ...}               inline JSON
//! ```

use anyhow::{anyhow, bail, Context, Result};
use mobm::instances::{random_coverage_table, random_graphic_rank, random_matroid_spec};
use mobm::submodular::{FnSpec, SubmodularFn};

fn numbers<T: std::str::FromStr>(list: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .with_context(|| format!("bad {what} {s:?}"))
        })
        .collect()
}

/// Parses `text` into a spec for a ground set of `n` elements and checks it
/// against `n`.
pub fn parse(text: &str, n: usize) -> Result<FnSpec> {
    let text = text.trim();
    let spec = if text.starts_with('{') {
        serde_json::from_str(text).context("inline function JSON")?
    } else {
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let seed = || -> Result<u64> { rest.parse().with_context(|| format!("bad seed {rest:?}")) };
        match family {
            "cardinality" if rest.is_empty() => FnSpec::Cardinality,
            "uniform" => FnSpec::UniformRank {
                k: rest.parse().with_context(|| format!("bad rank {rest:?}"))?,
            },
            "partition" => {
                let (blocks, caps) = rest.split_once(':').ok_or_else(|| {
                    anyhow!("partition needs blocks and caps: partition:0,1|2:1,1")
                })?;
                let blocks = blocks
                    .split('|')
                    .map(|b| numbers(b, "element"))
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                FnSpec::PartitionBudget {
                    blocks,
                    caps: numbers(caps, "cap")?,
                }
            }
            "threshold" => {
                let (weights, cap) = rest.split_once(':').ok_or_else(|| {
                    anyhow!("threshold needs weights and a cap: threshold:1,2:2.5")
                })?;
                FnSpec::WeightedThreshold {
                    weights: numbers(weights, "weight")?,
                    cap: cap.parse().with_context(|| format!("bad cap {cap:?}"))?,
                }
            }
            "table" => random_coverage_table(n, seed()?),
            "graphic" => random_graphic_rank(n, seed()?),
            "matroid" => random_matroid_spec(n, seed()?),
            _ => bail!(
                "unknown function {text:?}; expected cardinality, uniform:K, partition:..., \
                 threshold:..., table:SEED, graphic:SEED, matroid:SEED or inline JSON"
            ),
        }
    };
    SubmodularFn::from_spec(n, &spec)?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_forms() {
        assert_eq!(parse("cardinality", 3).unwrap(), FnSpec::Cardinality);
        assert_eq!(parse("uniform:2", 3).unwrap(), FnSpec::UniformRank { k: 2 });
        assert_eq!(
            parse("partition:0,1|2:1,0.5", 3).unwrap(),
            FnSpec::PartitionBudget {
                blocks: vec![vec![0, 1], vec![2]],
                caps: vec![1.0, 0.5]
            }
        );
        assert_eq!(
            parse("threshold:1,2:2.5", 2).unwrap(),
            FnSpec::WeightedThreshold {
                weights: vec![1.0, 2.0],
                cap: 2.5
            }
        );
        assert!(
            matches!(parse("table:3", 4).unwrap(), FnSpec::ExplicitTable { values } if values.len() == 16)
        );
        assert_eq!(
            parse("graphic:1", 5).unwrap(),
            parse("graphic:1", 5).unwrap()
        );
    }

    #[test]
    fn inline_json() {
        let spec = parse(r#"{"family": "uniform_rank", "k": 1}"#, 4).unwrap();
        assert_eq!(spec, FnSpec::UniformRank { k: 1 });
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "",
            "rank",
            "uniform:x",
            "partition:0,1",
            "partition:0|1:1",
            "threshold:1:2",
            "table:",
            "cardinality:3",
        ] {
            assert!(parse(bad, 3).is_err(), "{bad:?} was accepted");
        }
    }
}
