use harmcodes::configurations::{
    by_name, load, load_float, load_gram, normalized_gram, save, save_float, save_gram,
    BUILTIN_NAMES,
};
use harmcodes::embedding::{embed_code, embed_coords};
use harmcodes::Error;

#[test]
fn builtin_configurations_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_NAMES.iter().take(5) {
        let x = by_name(name).unwrap();
        let path = dir.path().join(format!("{name}.cfg"));
        save(&x, &path).unwrap();
        let y = load(&path).unwrap();
        assert_eq!(
            normalized_gram(&x).unwrap().palette(),
            normalized_gram(&y).unwrap().palette()
        );
        assert_eq!(x.len(), y.len());
        assert_eq!(x.provenance(), y.provenance());
    }
}

#[test]
fn embedded_gram_and_coordinates_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let x = by_name("e8").unwrap();
    let code = embed_code(&x).unwrap();
    let gp = dir.path().join("e8.gram");
    save_gram("e8 embedded", &code.gram, &gp).unwrap();
    let (name, g) = load_gram(&gp).unwrap();
    assert_eq!(name, "e8 embedded");
    assert_eq!(g.size(), 240);
    assert_eq!(g.d(), 34);
    assert_eq!(g.palette(), code.gram.palette());

    let rows = embed_coords(&x).unwrap();
    let cp = dir.path().join("e8.coords");
    save_float("e8 embedded", 34, &rows, &cp).unwrap();
    let f = load_float(&cp).unwrap();
    assert_eq!(f.points, rows);
}

#[test]
fn truncated_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ico.cfg");
    save(&by_name("icosahedron").unwrap(), &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let cut: String = text.lines().take(8).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, cut).unwrap();
    let e = load(&path).unwrap_err();
    assert!(matches!(e, Error::Parse { .. }), "{e}");
    assert!(matches!(
        load(dir.path().join("missing.cfg")),
        Err(Error::Io(_))
    ));
}
