//! Edge-list round trip and partition JSON.

use pathcert::graph::{petersen, read_edge_list, write_edge_list};
use pathcert::partition::{PartitionJson, PathPartition};

fn main() {
    let g = petersen();
    let text = write_edge_list(&g);
    print!("{}", String::from_utf8_lossy(&text));
    let back = read_edge_list(&text).unwrap();
    assert_eq!(back, g);

    let err = read_edge_list(b"3 2\n0 1\n1 1\n").unwrap_err();
    println!("rejected: {err}");

    let p = PathPartition::from_sequences(10, vec![vec![0, 1, 2, 3, 4, 9, 6, 8, 5, 7]], vec![]);
    println!(
        "{}",
        serde_json::to_string(&PartitionJson::from_partition(&p)).unwrap()
    );
}
