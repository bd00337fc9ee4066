use defgroups_web::{analyze_report, construct_report, table_report};

#[test]
fn construct_matches_worked_example() {
    let r = construct_report(2, 5).unwrap();
    assert_eq!(r["group"], "A×C²");
    assert_eq!((r["generators"].as_u64(), r["relators"].as_u64()), (Some(4), Some(9)));
    assert_eq!(r["certificate"]["certified"], true);
    assert_eq!(r["certificate"]["verdict"], "certified deficiency -5");
    assert!(r["gap"].as_str().unwrap().starts_with("F := FreeGroup(\"a1\", \"b1\", \"a2\", \"a3\")"));
    assert!(construct_report(4, 1).unwrap_err().contains("not prime"));
}

#[test]
fn table_names() {
    let rows = table_report(2, 7).unwrap();
    let names: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["group"].as_str().unwrap()).collect();
    assert_eq!(names, ["C", "C²", "B", "C³", "B×C", "A×C²", "C⁴", "B×C²"]);
    assert!(table_report(9, 3).is_err());
}

#[test]
fn analyze_small_and_large() {
    let b2 = analyze_report("< a, b | a^4, b^4, (ab)^2, (a^-1 b)^2 >").unwrap();
    assert_eq!(b2["order"], 16);
    assert_eq!(b2["h1"], "Z/2 + Z/4");
    assert_eq!(b2["h2"], "(Z/2)^2");
    assert_eq!(b2["certificate"]["verdict"], "certified deficiency -2");

    let big = analyze_report("< a | a^100 >").unwrap();
    assert_eq!(big["order"], 100);
    assert!(big.get("h2").is_none());

    let inf = analyze_report("< a, b | a^2, b^2 >").unwrap();
    assert!(inf["order"].is_null());
    assert!(inf["note"].as_str().unwrap().contains("coset limit"));

    assert!(analyze_report("< a | b >").is_err());
}
