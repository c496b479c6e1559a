use sdcoding_cli::commands::{fit, mc, parse_counts, show, sweep, time_for_kappa, Point};
use sdcoding_cli::parse_config;

#[test]
fn kappa_to_time_inverts_the_envelope() {
    let cfg = parse_config("c_aa = 2\ndelta_n = 0.5\n").unwrap();
    let t = time_for_kappa(&cfg.spectrum, 0.3).unwrap();
    assert!((cfg.spectrum.envelope(t, 0.0) - 0.3).abs() < 1e-14);
    assert_eq!(time_for_kappa(&cfg.spectrum, 1.0).unwrap(), 0.0);
    assert!(time_for_kappa(&cfg.spectrum, 0.0).is_err());
    let frozen = parse_config("delta_n = 0\n").unwrap();
    assert!(time_for_kappa(&frozen.spectrum, 0.5).is_err());
}

#[test]
fn fit_reads_named_columns_and_scheme() {
    let cfg = parse_config("").unwrap();
    let mut csv = String::from("kappa_abs,other,mi,scheme\n");
    for i in 1..=6 {
        let kappa = 0.15 * i as f64;
        let mi = sdcoding::protocol::closed_form_i4(kappa, -0.5, 0.05).unwrap();
        csv.push_str(&format!("{kappa},1,{mi},FOUR_STATE\n"));
    }
    let out = fit(&cfg, &csv, None).unwrap();
    let line: Vec<f64> = out.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((line[0] + 0.5).abs() <= 1e-4);
    assert!((line[1] - 0.05).abs() <= 1e-5);
    assert_eq!(line[3], 6.0);
    assert!(fit(&cfg, &csv, Some("missing")).is_err());
    assert!(fit(&cfg, "kappa_abs,mi\n0.5,abc\n0.6,1\n", None).unwrap_err().to_string().contains("record 1"));
    assert!(fit(&cfg, "kappa_abs,mi,scheme\n0.5,1,THREE_STATE\n0.6,1,FOUR_STATE\n", None).is_err());
}

#[test]
fn counts_parser() {
    assert_eq!(parse_counts(&"1 ".repeat(16)).unwrap().len(), 16);
    assert!(parse_counts("1,2,3").is_err());
    assert!(parse_counts(&"-1 ".repeat(16)).is_err());
}

#[test]
fn command_outputs_are_deterministic() {
    let cfg = parse_config("scheme = FOUR_STATE\nk = -0.3\ns = 0.02\nt_values = 0, 0.5\ntrials = 10\n").unwrap();
    assert_eq!(sweep(&cfg).unwrap(), sweep(&cfg).unwrap());
    assert_eq!(mc(&cfg, Point::Time(0.5)).unwrap(), mc(&cfg, Point::Time(0.5)).unwrap());
    assert!(show(&cfg).unwrap().contains("# grid points: 2"));
}
