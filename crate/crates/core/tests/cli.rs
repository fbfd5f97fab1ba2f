use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_theta-forms"));
    c.env_remove("THETA_FORMS_REGISTRY").env_remove("THETA_FORMS_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("theta-forms-cli-test-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn repcount_of_1_8_8_at_9() {
    let o = run(&["repcount", "--form", "1,8,8,0,0,0", "--m", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "10\n");
    let o = run(&["repcount", "--form", "(1,1,1,0,0,0)", "--m", "3"]);
    assert_eq!(stdout(&o), "8\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--id", "2.18", "--mmax", "3000"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--id", "missing"]).status.code(), Some(2));
    assert_eq!(run(&["repcount", "--form", "1,-1,1,0,0,0", "--m", "1"]).status.code(), Some(2));
    assert_eq!(run(&["sgenus", "--s", "4"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["prove-eta", "--id", "4.1"]).status.code(), Some(0));
    assert_eq!(run(&["sgenus", "--s", "21"]).status.code(), Some(0));
    let o = run(&["positivity", "--s", "15", "--limit", "300"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nonnegative through q^299"));
}

#[test]
fn expand_csv_round_trips() {
    let o = run(&["expand", "--func", "psi(q)^2*phi(q^3)", "--n", "60", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["exponent", "coefficient"]);
    let rows: Vec<(usize, i64)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 60);
    assert!(rows.iter().enumerate().all(|(i, &(k, _))| i == k));
    // psi(q)^2 counts representations by two triangular numbers
    let tri = |n: usize| (n * (n + 1)) / 2;
    let mut psi2 = vec![0i64; 60];
    for a in 0..12 {
        for b in 0..12 {
            if tri(a) + tri(b) < 60 {
                psi2[tri(a) + tri(b)] += 1;
            }
        }
    }
    let mut phi3 = vec![0i64; 60];
    for x in -5i64..=5 {
        if 3 * x * x < 60 {
            phi3[(3 * x * x) as usize] += 1;
        }
    }
    for (k, c) in rows {
        let want: i64 = (0..=k).map(|j| psi2[j] * phi3[k - j]).sum();
        assert_eq!(c, want, "q^{k}");
    }
}

#[test]
fn suite_csv_has_one_row_per_entry() {
    let o = run(&["suite", "--terms", "120", "--mmax", "800", "--limit", "200", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["name", "mode", "params", "verdict", "witness", "ms"]);
    let verdicts: Vec<String> = rdr.records().map(|r| r.unwrap()[3].to_string()).collect();
    let listed = stdout(&run(&["list"])).lines().count();
    assert_eq!(verdicts.len(), listed);
    assert!(verdicts.iter().all(|v| v == "pass"));
}

#[test]
fn registry_from_env_and_config() {
    let dir = scratch("env");
    let reg = dir.join("reg.txt");
    std::fs::write(
        &reg,
        "ok: series: psi(q)^2 = phi(q)*psi(q^2)\nwrong: ternary: (1,1,1,0,0,0)(M) = (1,1,1,0,0,0)(M/2^2)\n",
    )
    .unwrap();
    let o = bin().env("THETA_FORMS_REGISTRY", &reg).args(["suite"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("wrong"), "{text}");
    assert!(text.trim_end().ends_with("1/1/2"), "{text}");

    let conf = dir.join("tf.conf");
    std::fs::write(&conf, format!("registry = {}\nterms = 30\nformat = csv\n", reg.display())).unwrap();
    let o = run(&["verify", "--id", "ok", "--config", conf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(",N=30,pass,"), "{}", stdout(&o));

    // flags win over the config file
    let o = run(&["verify", "--id", "ok", "--config", conf.to_str().unwrap(), "--terms", "40", "--format", "table"]);
    assert!(stdout(&o).contains("N=40"));
    assert!(!stdout(&o).contains(','));

    std::fs::write(&conf, "speed = fast\n").unwrap();
    let o = bin().env("THETA_FORMS_CONFIG", &conf).args(["list"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn forms_and_sgenus_output() {
    let o = run(&["forms", "--disc", "144", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("form,aut\n"));
    assert!(text.contains("\"(1,6,6,0,0,0)\",16\n"), "{text}");
    let o = run(&["sgenus", "--s", "15"]);
    let text = stdout(&o);
    assert!(text.contains("masses 3,4,2,6\n"), "{text}");
    assert!(text.contains("M(S) = 15 (equals S)"));
}
