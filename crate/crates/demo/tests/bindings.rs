use schur_demo::{fsymbols_value, isometry_value, shape_value, transform_value};

#[test]
fn transform_payload_is_square_and_labelled() {
    for method in ["krovi", "bch", "bch-highdim"] {
        let v = transform_value(method, 3, 2).unwrap();
        assert_eq!(v["dim"], 8);
        assert_eq!(v["rows"].as_array().unwrap().len(), 8);
        assert_eq!(v["columns"][0], "111");
        let values = v["values"].as_array().unwrap();
        assert!(values.iter().all(|r| r.as_array().unwrap().len() == 8));
        assert!(v["unitarity_deviation"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn transform_rejects_large_or_unknown_requests() {
    assert!(transform_value("krovi", 6, 3).is_err());
    assert!(transform_value("qr", 2, 2).is_err());
}

#[test]
fn isometry_payload() {
    let v = isometry_value("3,2", "2,1,2").unwrap();
    assert_eq!(v["tableaux"].as_array().unwrap().len(), 5);
    assert_eq!(v["patterns"].as_array().unwrap().len(), v["values"][0].as_array().unwrap().len());
    assert!(v["isometry_deviation"].as_f64().unwrap() < 1e-12);
    assert!(isometry_value("3,2", "2,2").is_err());
}

#[test]
fn fsymbol_payload() {
    let v = fsymbols_value("1", "2,1").unwrap();
    assert_eq!(v["k"], 2);
    assert!((v["left"][0]["value"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert!(fsymbols_value("2,1", "2,1").is_err());
}

#[test]
fn shape_payload() {
    let v = shape_value("2,1", 3).unwrap();
    assert_eq!(v["syt_count"], 2);
    assert_eq!(v["gt_count"], 8);
    let k: u64 = v["kostka"].as_array().unwrap().iter().map(|e| e["value"].as_u64().unwrap()).sum();
    assert_eq!(k, 3);
    assert_eq!(shape_value("1,1,1", 2).unwrap()["gt_count"], 0);
}
