use super::{Component, Kind, PathPartition};
use serde::{Deserialize, Serialize};

/// Serialized shape of a partition. Cycles are written from their smallest
/// vertex; paths from their smaller end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct PartitionJson {
    pub paths: Vec<Vec<usize>>,
    pub cycles: Vec<Vec<usize>>,
    pub singletons: Vec<usize>,
}

impl PartitionJson {
    pub fn from_partition(p: &PathPartition) -> Self {
        let q = p.normalized();
        let mut out = Self::default();
        for c in q.components() {
            match c.kind {
                Kind::Path => out.paths.push(c.vertices.clone()),
                Kind::Cycle => out.cycles.push(c.vertices.clone()),
                Kind::Singleton => out.singletons.push(c.vertices[0]),
            }
        }
        out
    }

    /// Rebuilds a partition on `n` vertices; validity is left to
    /// [`super::validate_partition`].
    pub fn into_partition(self, n: usize) -> PathPartition {
        let comps = self
            .paths
            .into_iter()
            .map(|vertices| Component {
                kind: Kind::Path,
                vertices,
            })
            .chain(self.cycles.into_iter().map(Component::cycle))
            .chain(
                self.singletons
                    .into_iter()
                    .map(|v| Component::path(vec![v])),
            )
            .collect();
        PathPartition::from_components(n, comps)
    }
}
