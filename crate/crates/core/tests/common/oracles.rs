// Frozen reference values, generated by tools/gen_oracles.py
// (mpmath 1.3, 40 significant digits). Do not edit by hand.
#![allow(dead_code)]

pub const LOGGAMMA_HALF: (f64, f64) = (0.5723649429247001, 0.0);
pub const LOGGAMMA_3P5: (f64, f64) = (1.2009736023470743, 0.0);
pub const LOGGAMMA_1_1: (f64, f64) = (-0.6509231993018564, -0.3016403204675332);
pub const LOGGAMMA_2_3: (f64, f64) = (-2.0928517530927335, 2.302396543466868);
pub const LOGGAMMA_HALF_10: (f64, f64) = (-14.789024734744293, 13.03002003491109);
pub const LOGGAMMA_HALF_M10: (f64, f64) = (-14.789024734744293, -13.03002003491109);
pub const LOGGAMMA_M3P7_P: (f64, f64) = (-2.4538556846034036, -12.434282129022643);
pub const LOGGAMMA_M3P7_M: (f64, f64) = (-2.4538556846034036, 12.434282129022643);
pub const LOGGAMMA_M5P5: (f64, f64) = (-4.517832174007741, -18.84955592153876);
pub const LOGGAMMA_M5P5_P3: (f64, f64) = (-4.901040084122223, -18.31155846836436);
pub const LOGGAMMA_M5P5_M3: (f64, f64) = (-4.901040084122223, 18.31155846836436);
pub const LOGGAMMA_10_100: (f64, f64) = (-112.39736554967237, 374.9894229622295);
pub const LOGGAMMA_40_5: (f64, f64) = (106.31616092462582, 18.39492362670134);
pub const LOGGAMMA_M0P5: (f64, f64) = (1.2655121234846454, -3.141592653589793);
pub const LOGGAMMA_0P3_M0P7: (f64, f64) = (-0.09317031249813428, 1.2239573657136886);
pub const LOGGAMMA_M50_200: (f64, f64) = (-581.3319562021165, 774.0289063431039);
pub const LOGGAMMA_50_200: (f64, f64) = (-50.477327126888966, 931.3535176857205);
pub const LOGGAMMA_M49P5_P5: (f64, f64) = (-146.29198113007973, -155.12360451177517);

pub const INC_GAMMA_HALF_40: (f64, f64) = (1.772453850905516, 0.0);

pub const BESSELJ_0_1: (f64, f64) = (0.7651976865579666, 0.0);
pub const BESSELJ_1_1: (f64, f64) = (0.4400505857449335, 0.0);
pub const BESSELJ_6_2: (f64, f64) = (0.0012024289717899933, 0.0);
pub const BESSELJ_10_0P1: (f64, f64) = (2.6905328954342157e-20, 0.0);
pub const BESSELJ_2P5_10: (f64, f64) = (0.19665848358181842, 0.0);
pub const BESSELJ_M2P5_10: (f64, f64) = (0.16417847961494106, 0.0);
pub const BESSELJ_0P4_5: (f64, f64) = (-0.32318927280285537, 0.0);
pub const BESSELJ_M0P4_5: (f64, f64) = (0.0432802065401998, 0.0);
pub const BESSELJ_3_80: (f64, f64) = (0.05947433333047844, 0.0);
pub const BESSELJ_1_95: (f64, f64) = (-0.0023925612997269057, 0.0);
pub const BESSELJ_20_24: (f64, f64) = (0.16191265166449528, 0.0);
pub const BESSELJ_2I_3: (f64, f64) = (0.09214780613890182, 4.858508321180969);
pub const BESSELJ_CPLX_CPLX: (f64, f64) = (-0.15662314548069597, -1.036527532348532);
pub const BESSELJ_0P4_18I: (f64, f64) = (5007833.615034058, 3638404.0944970697);
pub const BESSELY_0_2P5: (f64, f64) = (0.4980703596152319, 0.0);
pub const BESSELY_4_7: (f64, f64) = (0.2903099835045422, 0.0);
pub const BESSELY_1P3_5: (f64, f64) = (0.266313849110402, 0.0);
pub const BESSELY_2_3_1: (f64, f64) = (-0.14336357078701012, 0.45769963640396666);
pub const BESSELY_HALF_I_6: (f64, f64) = (-0.3851234990148588, -0.1254849744966825);
pub const BESSELK_HALF_2: (f64, f64) = (0.11993777196806145, 0.0);
pub const BESSELK_I_4PI: (f64, f64) = (1.175266061778854e-06, 0.0);
pub const BESSELK_0P4_7: (f64, f64) = (0.00042937137830062456, 0.0);
pub const BESSELK_0_3: (f64, f64) = (0.03473950438627925, 0.0);
pub const BESSELK_3_0P5: (f64, f64) = (62.05790952993026, 0.0);
pub const HANKEL1_0P7_9: (f64, f64) = (0.1766325978690029, 0.19909704108918053);
pub const HANKEL1_CPLX: (f64, f64) = (-0.022001362999187358, 0.05194437784129734);
pub const HANKEL1_2_2_1: (f64, f64) = (0.0022588100378924465, -0.307766811161242);
pub const HANKEL2_0P7_9: (f64, f64) = (0.1766325978690029, -0.19909704108918053);
pub const HANKEL2_CPLX: (f64, f64) = (-1.960030008412883, -1.182948066150884);

pub const G_DELTA0_HALF: (f64, f64) = (1.0, 0.0);
pub const G_DELTA1_0P3_0P2: (f64, f64) = (0.6764912117146624, 1.4019354449489);
pub const G_DELTA0_M0P8_4: (f64, f64) = (1.5428452786538713, -0.8565032535552475);
pub const G_M1_0P3_0P2: (f64, f64) = (2.150806743738733, 1.4478722026915603);
pub const G_M3_M0P2_1P1: (f64, f64) = (-0.17684739655073475, 5.521094531516732);
pub const G_PLUS_HALF_1: (f64, f64) = (0.10666734954316752, -0.018267306847764744);
pub const G_SIGNED_PROD: (f64, f64) = (0.7140936127669029, -1.5179623282973216);
pub const G_REAL_PROD: (f64, f64) = (0.0, 0.8188118949761739);
pub const G_CPLX_PROD: (f64, f64) = (0.04843099740991058, -1.5534976563482954);

pub const KERNEL_R2_EVEN_POS: (f64, f64) = (1.2771679168314853, 0.0);
pub const KERNEL_R2_EVEN_NEG: (f64, f64) = (1.650750747388807e-05, 0.0);
pub const KERNEL_R2_ODD_POS: (f64, f64) = (0.0, -0.7643473562765579);
pub const KERNEL_R2_ODD_NEG: (f64, f64) = (0.0, 1.597338146577564e-05);
pub const KERNEL_R2_DISCRETE: (f64, f64) = (1.040969673961332, 0.0);

pub const KERNEL_C2_ODD: (f64, f64) = (0.205545749480352, 0.38498984680401727);
pub const KERNEL_C2_EVEN: (f64, f64) = (0.26419468217801456, 0.8839703588992633);

pub const HANKEL_REAL_GAUSS_AT_1: (f64, f64) = (3.9773429310335144e-50, 0.05441822177285456);
pub const HANKEL_REAL_GAUSS_AT_HALF: (f64, f64) = (-4.1345780870029815e-49, 0.05025812100186216);
pub const HANKEL_CPLX_GAUSS_AT_0P8: (f64, f64) = (1.0323323096253868e-49, -0.003957089271548746);

pub const TORUS_D2_K00: (f64, f64) = (29.940280171614795, -1.8606973191560874);

pub const GL2R_PLUS_HALF_NEG: (f64, f64) = (1.1795809235650844e-05, 0.0);
pub const GL2R_PLUS_ZERO: (f64, f64) = (1.1880596490230304, 0.0);
pub const GL2R_COMP_0P2: (f64, f64) = (-1.1544155110343888, 0.0);
pub const GL2R_DISCRETE_3: (f64, f64) = (0.8709377150376562, 0.0);
pub const GL2C_PLUS_D1_T0P3: (f64, f64) = (0.5538191142878137, 0.0);
pub const GL2C_COMP_D0_T0P1: (f64, f64) = (-0.05074516233314804, 0.0);

pub const MELLIN_GAUSS_R: (f64, f64) = (0.5205949415431725, -0.5042432305636072);
pub const MELLIN_GAUSS_C: (f64, f64) = (1.6244141266828551, 2.660665291654515);
