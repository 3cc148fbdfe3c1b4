use oak_core::rdf::{parse_turtle, parse_turtle_bytes, serialize_turtle, BlankNode, Graph, Iri, Literal, Prefixes, Term, Triple};
use proptest::prelude::*;

fn arb_iri() -> impl Strategy<Value = Iri> {
    let ns = prop::sample::select(vec![
        "http://www.ucd.ie/consus/AgriOnt#",
        "http://www.ucd.ie/consus/AgriKMap#",
        "http://example.org/other/",
        "urn:x:",
    ]);
    (ns, "[A-Za-z][A-Za-z0-9_-]{0,6}|[0-9]{1,3}|[a-z]+\\.[a-z]+").prop_map(|(ns, local)| Iri::new(format!("{ns}{local}")).unwrap())
}

fn arb_literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        "[ -~\n\t\"\\\\é\u{1}]{0,12}".prop_map(Literal::string),
        ("[a-zA-Z ]{0,8}", "[a-z]{2}(-[A-Z]{2})?").prop_map(|(t, l)| Literal::lang(t, l).unwrap()),
        (-1000i64..1000).prop_map(|i| Literal::typed(i.to_string(), Iri::new("http://www.w3.org/2001/XMLSchema#integer").unwrap())),
        ("-?[0-9]{1,3}\\.[0-9]{1,3}").prop_map(|d| Literal::typed(d, Iri::new("http://www.w3.org/2001/XMLSchema#decimal").unwrap())),
        ("[a-z0-9]{0,5}", arb_iri()).prop_map(|(t, dt)| Literal::typed(t, dt)),
    ]
}

fn arb_triple() -> impl Strategy<Value = Triple> {
    let blank = "b[0-9]{1,2}".prop_map(|l| Term::BlankNode(BlankNode::new(l).unwrap()));
    let subject = prop_oneof![3 => arb_iri().prop_map(Term::Iri), 1 => blank.clone()];
    let object = prop_oneof![
        2 => arb_iri().prop_map(Term::Iri),
        2 => arb_literal().prop_map(Term::Literal),
        1 => blank,
    ];
    (subject, arb_iri(), object).prop_map(|(s, p, o)| Triple::new(s, p, o).unwrap())
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (prop::collection::vec(arb_triple(), 0..=100), any::<bool>()).prop_map(|(triples, standard)| {
        let mut g = Graph::with_prefixes(if standard { Prefixes::standard() } else { Prefixes::new() });
        g.extend(triples);
        g
    })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(g in arb_graph()) {
        let text = serialize_turtle(&g);
        let back = parse_turtle(&text, None).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back.triples(), g.triples());
        prop_assert_eq!(serialize_turtle(&back), text);
    }

    #[test]
    fn serialization_ignores_insertion_order(g in arb_graph(), seed in any::<u64>()) {
        let mut triples: Vec<Triple> = g.iter().cloned().collect();
        // cheap deterministic shuffle
        let n = triples.len();
        for i in (1..n).rev() {
            let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) % (i as u64 + 1)) as usize;
            triples.swap(i, j);
        }
        let mut shuffled = Graph::with_prefixes(g.prefixes.clone());
        shuffled.extend(triples);
        prop_assert_eq!(serialize_turtle(&shuffled), serialize_turtle(&g));
    }

    #[test]
    fn parser_is_total_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_turtle_bytes(&bytes, None);
    }

    #[test]
    fn parser_is_total_on_turtle_like_text(text in "[@a-z:<>_\"#. ;,^\\[\\]()0-9\n-]{0,120}") {
        let _ = parse_turtle(&text, Some(&Prefixes::standard()));
    }
}
