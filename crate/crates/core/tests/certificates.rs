use embed3::certificate::{verify_certificate, Certificate, EdgeColour};
use embed3::corpus::{corpus, standard_names};
use embed3::pipeline::{decide, DecideOptions, Status};
use embed3::rotation::Colour;
use embed3::{FieldTag, Limits};

fn certificates() -> Vec<(String, FieldTag, Certificate)> {
    let mut out = Vec::new();
    for name in standard_names() {
        let c = corpus(&name).unwrap();
        for k in FieldTag::standard() {
            let v = decide(&c, k, &DecideOptions::default()).unwrap();
            if v.status == Status::EmbeddableCertified {
                out.push((name.clone(), k, v.certificate.unwrap()));
            } else {
                assert!(v.certificate.is_none(), "{name}");
            }
        }
    }
    out
}

#[test]
fn every_certificate_verifies_after_a_text_round_trip() {
    let limits = Limits::default();
    let certs = certificates();
    assert!(certs.len() >= 40);
    for (name, k, cert) in certs {
        let text = cert.to_text();
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_text(), text, "{name} over {k}");
        let r = verify_certificate(&back, &limits);
        assert!(r.passed(), "{name} over {k}: {:?}", r.failures());
    }
}

#[test]
fn tampering_is_detected() {
    let limits = Limits::default();
    let (_, _, cert) = certificates()
        .into_iter()
        .find(|(n, _, _)| n == "two-tetrahedra-glued")
        .unwrap();

    let mut recoloured = cert.clone();
    let i = recoloured
        .colours
        .iter()
        .position(|c| c.colour != Colour::DegenerateGreen)
        .unwrap();
    let EdgeColour { colour, .. } = &mut recoloured.colours[i];
    *colour = if *colour == Colour::Red {
        Colour::Green
    } else {
        Colour::Red
    };
    assert!(!verify_certificate(&recoloured, &limits).passed());

    let mut rewired = cert.clone();
    let (_, a, b) = rewired.dual_graph.edges[0].clone();
    let third = rewired
        .dual_graph
        .vertices
        .iter()
        .find(|v| **v != a && **v != b)
        .cloned()
        .unwrap();
    rewired.dual_graph.edges[0].2 = third;
    assert!(!verify_certificate(&rewired, &limits).passed());

    let mut truncated = cert.clone();
    truncated.junkify.pop();
    assert!(!verify_certificate(&truncated, &limits).passed());

    let mut rotated = cert;
    let v = rotated
        .framework
        .iter_mut()
        .find(|v| v.rotators.iter().any(|r| r.faces.len() >= 3))
        .unwrap();
    let r = v.rotators.iter_mut().find(|r| r.faces.len() >= 3).unwrap();
    r.faces.swap(0, 1);
    assert!(!verify_certificate(&rotated, &limits).passed());
}

#[test]
fn unsupported_versions_are_rejected() {
    let (_, _, cert) = certificates().into_iter().next().unwrap();
    let text = cert.to_text().replace("\"version\": 1", "\"version\": 2");
    assert!(Certificate::parse(&text).is_err());
    assert!(Certificate::parse("{}").is_err());
}
