use ddflux::{parse_config, preset, render_config, ConfigError, Model};
use ddflux_core::{BoundaryCondition, CflMode, FluxModel, FluxScheme, SchemeKind};

#[test]
fn preset_with_override() {
    let s = parse_config("preset=dd_homogeneous\nn_cells=1024\n").unwrap();
    let p = preset("dd_homogeneous").unwrap();
    assert_eq!(s.n_cells, 1024);
    assert_eq!(s.params, p.params);
    assert_eq!(s.scheme, SchemeKind::Dispersive);

    let s = parse_config("n_cells=512 # coarse\n\npreset=dd_homogeneous\nmu_exponent=2.5").unwrap();
    assert_eq!(s.params.mu_exponent, 2.5);
    assert_eq!(s.n_cells, 512);
    assert_eq!(s.params.beta, 5.0);
}

#[test]
fn zero_cells_is_a_validation_error() {
    let e = parse_config("preset=dd_homogeneous\nn_cells=0").unwrap_err();
    assert!(
        matches!(e, ConfigError::Validation(ref m) if m.contains("n_cells")),
        "{e}"
    );
}

#[test]
fn parse_errors_carry_line_numbers() {
    let cases = [
        ("preset=cap_homogeneous\nfoo=1", 2),
        ("# header\npreset=nothing", 2),
        ("preset=cap_homogeneous\n\n\nbeta=abc", 4),
        ("preset=cap_homogeneous\nbeta", 2),
        ("preset=cap_homogeneous\nbeta=1\nbeta=2", 3),
        ("preset=cap_homogeneous\nflux=godunov", 2),
        ("preset=cap_homogeneous\nu0=1 2", 2),
        ("preset=cap_homogeneous\nk_bounds=1", 2),
        ("preset=cap_homogeneous\nbc=", 2),
    ];
    for (text, line) in cases {
        match parse_config(text) {
            Err(ConfigError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn validation_names_the_invariant() {
    let cases = [
        ("preset=cap_homogeneous\nt_final=0", "t_final"),
        ("preset=cap_homogeneous\nu0=1.5", "u0"),
        ("preset=cap_heterogeneous\nk_bounds=1,1.2", "k range"),
        ("preset=dd_homogeneous\nu_bounds=-1,4", "u0"),
        ("preset=dd_homogeneous\nx_left=1", "domain"),
        ("preset=dd_homogeneous\ncfl_number=1.5", "cfl_number"),
        ("u0=1\nmodel=burgers", "t_final"),
    ];
    for (text, needle) in cases {
        match parse_config(text) {
            Err(ConfigError::Validation(m)) => assert!(m.contains(needle), "{text}: {m}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn standalone_config() {
    let text = "\
        name=shock\n\
        x_left=-1\n\
        x_right=1\n\
        bc=periodic\n\
        u_bounds=-1,1   # before model on purpose\n\
        model=burgers\n\
        u0=lin(0,0.5) @0 -0.5\n\
        t_final=0.25\n\
        flux=llf\n\
        scheme=dispersive\n\
        cfl_mode=strict\n\
        entropy_every=0\n";
    let s = parse_config(text).unwrap();
    assert_eq!(s.name, "shock");
    assert_eq!(s.bc, BoundaryCondition::Periodic);
    assert_eq!(s.model.bounds(), (-1.0, 1.0));
    assert!(matches!(s.model, Model::Burgers(_)));
    assert_eq!(s.flux, FluxScheme::LocalLaxFriedrichs);
    assert_eq!(s.cfl_mode, CflMode::Strict);
    assert_eq!(s.entropy_every, 0);
    assert_eq!(s.u0.function().eval(-0.5), -0.25);
}

#[test]
fn rendered_presets_parse_back() {
    for name in ddflux::PRESETS {
        let p = preset(name).unwrap();
        let s = parse_config(&render_config(&p)).unwrap();
        assert_eq!(render_config(&s), render_config(&p));
        assert_eq!(s.params, p.params);
        assert_eq!(s.model, p.model);
        assert_eq!(s.u0, p.u0);
        assert_eq!(s.k, p.k);
    }
}
