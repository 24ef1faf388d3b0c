// Generated by scripts/special_reference.py (mpmath, 40 digits). Do not edit.

#[allow(dead_code)]
pub const ERF: &[(f64, f64)] = &[
    (-3.5, -0.9999992569016276),
    (-1.2, -0.9103139782296353),
    (-0.3, -0.3286267594591274),
    (1e-08, 1.1283791670955126e-08),
    (0.001, 0.0011283787909692365),
    (0.05, 0.05637197779701663),
    (0.2, 0.22270258921047847),
    (0.49, 0.511668261188523),
    (0.5, 0.5204998778130465),
    (0.75, 0.7111556336535151),
    (1.0, 0.8427007929497149),
    (1.25, 0.9229001282564583),
    (1.49, 0.9648978648432042),
    (1.5, 0.9661051464753108),
    (1.75, 0.9866716712191824),
    (2.0, 0.9953222650189527),
    (2.5, 0.999593047982555),
    (3.0, 0.9999779095030014),
    (4.0, 0.9999999845827421),
    (5.5, 0.9999999999999927),
];

#[allow(dead_code)]
pub const ERFC: &[(f64, f64)] = &[
    (-2.0, 1.9953222650189526),
    (-0.5, 1.5204998778130465),
    (0.0, 1.0),
    (0.01, 0.9887165844441503),
    (0.3, 0.6713732405408726),
    (0.5, 0.4795001221869535),
    (0.9, 0.20309178757716786),
    (1.2, 0.08968602177036464),
    (1.49, 0.03510213515679579),
    (1.5, 0.033894853524689274),
    (2.0, 0.004677734981047266),
    (2.7, 0.0001343327399405242),
    (3.3, 3.0577097964381654e-06),
    (4.0, 1.541725790028002e-08),
    (5.0, 1.537459794428035e-12),
    (6.5, 3.8421483271206475e-20),
    (8.0, 1.1224297172982926e-29),
    (10.0, 2.088487583762545e-45),
    (15.0, 7.212994172451207e-100),
    (25.0, 8.300172571196523e-274),
];

#[allow(dead_code)]
pub const GAMMA_P: &[(f64, f64, f64)] = &[
    (0.5, 0.1, 0.345279153981423),
    (0.5, 1.0, 0.8427007929497149),
    (0.5, 4.0, 0.9953222650189527),
    (1.0, 1.0, 0.6321205588285577),
    (1.5, 0.25, 0.08110858834532414),
    (1.5, 1.0, 0.4275932955291202),
    (1.5, 2.5, 0.8282028557032669),
    (1.5, 10.0, 0.9998302575644472),
    (2.0, 1.0, 0.2642411176571154),
    (2.0, 0.01, 4.966791334026589e-05),
    (2.5, 3.0, 0.6937810815867216),
    (3.0, 1.0, 0.08030139707139419),
    (3.0, 7.0, 0.9703638361194782),
    (5.0, 2.0, 0.05265301734371116),
    (5.0, 12.0, 0.992399609318933),
    (0.25, 0.5, 0.8464864041916775),
    (0.75, 3.0, 0.9710451670450936),
    (10.0, 10.0, 0.5420702855281478),
    (20.0, 15.0, 0.12478121503252482),
    (0.1, 0.05, 0.7755386354510305),
];

#[allow(dead_code)]
pub const GAMMA_Q: &[(f64, f64, f64)] = &[
    (0.5, 0.1, 0.654720846018577),
    (0.5, 1.0, 0.15729920705028513),
    (0.5, 4.0, 0.004677734981047266),
    (1.0, 1.0, 0.36787944117144233),
    (1.5, 0.25, 0.9188914116546758),
    (1.5, 1.0, 0.5724067044708798),
    (1.5, 2.5, 0.17179714429673315),
    (1.5, 10.0, 0.00016974243555282643),
    (2.0, 1.0, 0.7357588823428847),
    (2.0, 0.01, 0.9999503320866597),
    (2.5, 3.0, 0.3062189184132784),
    (3.0, 1.0, 0.9196986029286058),
    (3.0, 7.0, 0.029636163880521777),
    (5.0, 2.0, 0.9473469826562888),
    (5.0, 12.0, 0.007600390681066996),
    (0.25, 0.5, 0.15351359580832247),
    (0.75, 3.0, 0.028954832954906393),
    (10.0, 10.0, 0.4579297144718522),
    (20.0, 15.0, 0.8752187849674752),
    (0.1, 0.05, 0.22446136454896942),
];

#[allow(dead_code)]
pub const EXPINT_E1: &[(f64, f64)] = &[
    (1e-06, 13.23829589306249),
    (0.001, 6.331539364136149),
    (0.01, 4.037929576538114),
    (0.1, 1.8229239584193906),
    (0.25, 1.0442826344437381),
    (0.5, 0.5597735947761608),
    (0.75, 0.34034081291123003),
    (0.99, 0.22309982579017723),
    (1.0, 0.21938393439552026),
    (1.01, 0.21574162379448997),
    (1.5, 0.10001958240663265),
    (2.0, 0.04890051070806112),
    (3.0, 0.013048381094197037),
    (4.5, 0.0020734007547146146),
    (6.0, 0.0003600824521626587),
    (10.0, 4.156968929685325e-06),
    (15.0, 1.918627892147867e-08),
    (25.0, 5.348899755340217e-13),
    (50.0, 3.783264029550459e-24),
    (100.0, 3.683597761682032e-46),
];

#[allow(dead_code)]
pub const GAMMA: &[(f64, f64)] = &[
    (0.1, 9.51350769866873),
    (0.25, 3.625609908221908),
    (0.5, 1.772453850905516),
    (0.75, 1.2254167024651776),
    (1.0, 1.0),
    (1.25, 0.906402477055477),
    (1.5, 0.886226925452758),
    (2.25, 1.1330030963193463),
    (3.0, 2.0),
    (4.5, 11.63172839656745),
    (7.5, 1871.2543057977882),
    (10.0, 362880.0),
    (20.5, 5.406242982335075e+17),
    (50.0, 6.082818640342675e+62),
    (100.0, 9.332621544394415e+155),
    (150.0, 3.80892263763057e+260),
    (-0.5, -3.544907701811032),
    (-1.5, 2.363271801207355),
    (-0.25, -4.901666809860711),
    (0.001, 999.4237724845955),
];

#[allow(dead_code)]
pub const UPPER_GAMMA: &[(f64, f64, f64)] = &[
    (-0.75, 0.01, 38.593204082665686),
    (-0.5, 0.2, 1.7929924720994257),
    (-0.5, 1.0, 0.1781477117815607),
    (-0.25, 3.0, 0.009393021239388665),
    (-0.5, 7.5, 2.2798515892166928e-05),
    (-0.9, 0.5, 0.6381754995928568),
    (0.0, 0.5, 0.5597735947761608),
    (0.0, 2.0, 0.04890051070806112),
    (0.5, 0.3, 0.7773593112498081),
    (1.5, 2.0, 0.23171655200098068),
];

