use std::fs;

use etalab::builders::{read_table, read_table_limited, write_table};
use etalab::error::GtblError;
use etalab::{eta, realize, realize_with_limit, Error, GroupSpec};

#[test]
fn written_tables_read_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["dihedral(16)", "heisenberg(3)", "product(quaternion(8),cyclic(2))"] {
        let g = realize(&text.parse().unwrap()).unwrap();
        let path = dir.path().join("g.gtbl");
        write_table(&g, &path).unwrap();
        let back = read_table(&path).unwrap();
        assert_eq!(back.table(), g.table(), "{text}");
        assert_eq!(eta(&back), eta(&g));
    }
}

#[test]
fn table_specs_load_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.gtbl");
    write_table(&realize(&GroupSpec::Quaternion(8)).unwrap(), &path).unwrap();
    let spec: GroupSpec = format!("table({})", path.display()).parse().unwrap();
    let g = realize(&spec).unwrap();
    assert_eq!(g.order(), 8);
    assert_eq!(eta(&g), 3);
    let inside = GroupSpec::Product(vec![spec.clone(), GroupSpec::Cyclic(2)]);
    assert_eq!(realize(&inside).unwrap().order(), 16);
    assert!(matches!(realize_with_limit(&spec, 4), Err(Error::OrderTooLarge { .. })));
    assert!(matches!(read_table_limited(&path, 4), Err(Error::OrderTooLarge { .. })));
}

#[test]
fn broken_files_report_distinct_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, fn(&GtblError) -> bool); 4] = [
        ("gtbl 1 2\n0 1\n1 0", |e| matches!(e, GtblError::MissingTrailingNewline)),
        ("gtbl 1 2\n0 1\n", |e| matches!(e, GtblError::RowCount { .. })),
        ("gtbl 1 2\n0 1\n1 2\n", |e| matches!(e, GtblError::EntryOutOfRange { .. })),
        ("# c\ngtbl 1 3\n0 1 2\n1 1 0\n2 0 1\n", |e| matches!(e, GtblError::Law(_))),
    ];
    for (i, (text, expected)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.gtbl"));
        fs::write(&path, text).unwrap();
        let err = read_table(&path).unwrap_err();
        assert!(expected(&err), "case {i}: {err}");
    }
    let missing = read_table(&dir.path().join("absent.gtbl")).unwrap_err();
    assert!(matches!(missing, GtblError::Io { .. }));
}
