use pursuit_core::graph::{
    barbell, complete_tree, cycle, grid, lollipop, parse_edge_list, path, write_edge_list, Family,
};

#[test]
fn family_sizes() {
    assert_eq!(path(9).unwrap().edge_count(), 8);
    assert_eq!(cycle(11).unwrap().diameter(), 5);
    let t = complete_tree(2, 6).unwrap();
    assert_eq!((t.n(), t.diameter(), t.max_degree()), (127, 12, 3));
    let g = grid(4).unwrap();
    assert_eq!((g.n(), g.edge_count(), g.diameter()), (16, 24, 6));
    let b = barbell(100, 1.0).unwrap();
    assert_eq!(b.n(), 100 + 2 * 99);
    assert_eq!(b.max_degree(), 100);
    let l = lollipop(150, 0.41).unwrap();
    assert_eq!(l.n(), 150 + 60);
    assert_eq!(barbell(10, 0.0).unwrap(), path(10).unwrap());
}

#[test]
fn family_serializes_with_tag() {
    let f = Family::Lollipop { n: 150, c: 0.41 };
    let json = serde_json::to_string(&f).unwrap();
    assert_eq!(json, r#"{"family":"lollipop","n":150,"c":0.41}"#);
    let back: Family = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
    assert_eq!(back.build().unwrap().n(), 210);
}

#[test]
fn edge_list_round_trip() {
    let g = grid(3).unwrap();
    let text = write_edge_list(&g);
    assert!(text.starts_with("9 12\n0 1\n"));
    assert_eq!(parse_edge_list(&text).unwrap(), g);
    let k2 = parse_edge_list("# K2\n2 1\n1 0\n").unwrap();
    assert_eq!(k2, path(2).unwrap());
}

#[test]
fn edge_list_rejections() {
    for bad in ["", "3 2\n0 1\n", "3 2\n0 1\n1 1\n", "3 2\n0 1\n1 0\n", "3 1\n0 1\n", "2 1\n0 x\n", "2 1\n0 5\n"] {
        assert!(parse_edge_list(bad).is_err(), "{bad:?}");
    }
}
