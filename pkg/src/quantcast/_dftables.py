"""Dickey-Fuller t-statistic quantile tables (generated file).

Empirical null quantiles of the unit-root t-ratio, estimated by
Monte Carlo (200000 driftless-random-walk replications per cell,
seed 20240412). Regenerate with tools/make_df_tables.py.
"""

import numpy as np

REPLICATIONS = 200000
SEED = 20240412
SAMPLE_SIZES = (25, 50, 100, 250, 500, 1000, 2500)

PROBS = np.array([
    0.001,
    0.0025,
    0.005,
    0.0075,
    0.01,
    0.015,
    0.02,
    0.03,
    0.04,
    0.05,
    0.06,
    0.08,
    0.1,
    0.125,
    0.15,
    0.2,
    0.25,
    0.3,
    0.4,
    0.5,
    0.6,
    0.7,
    0.8,
    0.85,
    0.9,
    0.925,
    0.95,
    0.96,
    0.97,
    0.975,
    0.98,
    0.985,
    0.99,
    0.9925,
    0.995,
    0.9975,
    0.999,
])

QUANTILES = {
    'n': {
        25: np.array([-3.525701, -3.198683, -2.940251, -2.766057, -2.652298, -2.486745, -2.364637, -2.184370, -2.055795, -1.949215, -1.863463, -1.720131, -1.605904, -1.484278, -1.380311, -1.206718, -1.062988, -0.936204, -0.706354, -0.473592, -0.207532, 0.087099, 0.438046, 0.654682, 0.928329, 1.104717, 1.342452, 1.462463, 1.611941, 1.705806, 1.816658, 1.956067, 2.142068, 2.271178, 2.453400, 2.736527, 3.101456]),
        50: np.array([-3.422586, -3.109772, -2.855211, -2.717467, -2.617404, -2.454994, -2.335228, -2.163880, -2.043862, -1.943331, -1.862543, -1.723979, -1.612271, -1.494928, -1.391130, -1.222060, -1.077722, -0.949009, -0.719280, -0.486013, -0.221433, 0.076226, 0.425413, 0.641845, 0.914697, 1.092194, 1.318656, 1.435380, 1.580412, 1.667413, 1.776815, 1.900670, 2.072041, 2.202686, 2.361928, 2.624561, 2.937191]),
        100: np.array([-3.349904, -3.053930, -2.822869, -2.694552, -2.584408, -2.434191, -2.320304, -2.162198, -2.039325, -1.942469, -1.858891, -1.725863, -1.617083, -1.502783, -1.399956, -1.226284, -1.084641, -0.955152, -0.725432, -0.493422, -0.232986, 0.062236, 0.414423, 0.627148, 0.902472, 1.076575, 1.298368, 1.415970, 1.561778, 1.647726, 1.754767, 1.883477, 2.055068, 2.173164, 2.332590, 2.573126, 2.858120]),
        250: np.array([-3.316426, -3.024264, -2.809168, -2.669939, -2.570655, -2.424429, -2.317779, -2.156071, -2.037612, -1.939404, -1.857810, -1.720279, -1.611843, -1.498879, -1.400742, -1.232494, -1.088520, -0.961651, -0.730321, -0.500001, -0.240499, 0.054714, 0.405763, 0.622288, 0.896094, 1.068091, 1.295483, 1.408317, 1.547916, 1.638818, 1.742435, 1.873753, 2.049573, 2.161601, 2.311379, 2.546443, 2.836102]),
        500: np.array([-3.295265, -3.019908, -2.807377, -2.665929, -2.568927, -2.425298, -2.314537, -2.157354, -2.036290, -1.938088, -1.857495, -1.723164, -1.614134, -1.497654, -1.398922, -1.232750, -1.090672, -0.961813, -0.730030, -0.498902, -0.240187, 0.054701, 0.404427, 0.616109, 0.883558, 1.059429, 1.283660, 1.400209, 1.535845, 1.624659, 1.726462, 1.852084, 2.018636, 2.133363, 2.293724, 2.548100, 2.817569]),
        1000: np.array([-3.313840, -3.028530, -2.814110, -2.684869, -2.579658, -2.433851, -2.322691, -2.162834, -2.043313, -1.948226, -1.865262, -1.727761, -1.617433, -1.503822, -1.405426, -1.236675, -1.093833, -0.966693, -0.732476, -0.498891, -0.238935, 0.057465, 0.405552, 0.620655, 0.893486, 1.069810, 1.291506, 1.404360, 1.546480, 1.629118, 1.723528, 1.851330, 2.026676, 2.131302, 2.282744, 2.517363, 2.799151]),
        2500: np.array([-3.300860, -3.043218, -2.813317, -2.679041, -2.577581, -2.434964, -2.321309, -2.156537, -2.036159, -1.940183, -1.860403, -1.726603, -1.619170, -1.503006, -1.401560, -1.233803, -1.090292, -0.962439, -0.732618, -0.502003, -0.242982, 0.054274, 0.399052, 0.614821, 0.882604, 1.056541, 1.280785, 1.391945, 1.529898, 1.613383, 1.711865, 1.831747, 1.998832, 2.115414, 2.265963, 2.512084, 2.806882]),
    },
    'c': {
        25: np.array([-4.729735, -4.337760, -4.051301, -3.862039, -3.741387, -3.554931, -3.425142, -3.233286, -3.100947, -2.995052, -2.900750, -2.756159, -2.636387, -2.514575, -2.407326, -2.233706, -2.089413, -1.960970, -1.736269, -1.530543, -1.324535, -1.095195, -0.803464, -0.614839, -0.374245, -0.215826, -0.002299, 0.106398, 0.241255, 0.322939, 0.422067, 0.550391, 0.715783, 0.840243, 0.996338, 1.243787, 1.567893]),
        50: np.array([-4.361615, -4.063745, -3.823219, -3.670242, -3.559306, -3.409446, -3.292549, -3.132530, -3.015406, -2.918019, -2.836126, -2.702710, -2.595757, -2.483770, -2.389100, -2.226272, -2.087754, -1.966447, -1.749508, -1.548172, -1.342146, -1.115170, -0.828752, -0.641371, -0.398202, -0.242588, -0.035676, 0.073266, 0.205791, 0.288455, 0.380622, 0.501273, 0.667455, 0.782895, 0.927367, 1.151545, 1.451355]),
        100: np.array([-4.212333, -3.931111, -3.722342, -3.597492, -3.500941, -3.356275, -3.252691, -3.101348, -2.985215, -2.893008, -2.814000, -2.683749, -2.581328, -2.471380, -2.378717, -2.221286, -2.088740, -1.968818, -1.757260, -1.559014, -1.356222, -1.134173, -0.849499, -0.663948, -0.422367, -0.265527, -0.058899, 0.046423, 0.178195, 0.256215, 0.348152, 0.464301, 0.620193, 0.736325, 0.897755, 1.142717, 1.417154]),
        250: np.array([-4.159700, -3.875124, -3.673178, -3.549984, -3.454974, -3.319747, -3.216751, -3.065708, -2.957346, -2.868719, -2.793911, -2.670657, -2.568531, -2.462960, -2.370901, -2.216114, -2.085096, -1.967775, -1.757755, -1.564108, -1.365273, -1.140626, -0.860722, -0.675123, -0.434850, -0.278948, -0.076609, 0.025829, 0.164833, 0.240421, 0.333601, 0.454806, 0.621686, 0.735912, 0.887632, 1.120858, 1.433060]),
        500: np.array([-4.115025, -3.870712, -3.653327, -3.534289, -3.444298, -3.313558, -3.213060, -3.065985, -2.953564, -2.862706, -2.790432, -2.669651, -2.572793, -2.467786, -2.375594, -2.220540, -2.089811, -1.973675, -1.762957, -1.566264, -1.369684, -1.147302, -0.865939, -0.680840, -0.441652, -0.285547, -0.078752, 0.028746, 0.163246, 0.239518, 0.332298, 0.450212, 0.603301, 0.709778, 0.850809, 1.099482, 1.383830]),
        1000: np.array([-4.094374, -3.855034, -3.642083, -3.518506, -3.434358, -3.302226, -3.200722, -3.052929, -2.946821, -2.863618, -2.787311, -2.664370, -2.564307, -2.461122, -2.371187, -2.219150, -2.088159, -1.972791, -1.763953, -1.568330, -1.369701, -1.144755, -0.862180, -0.676898, -0.432077, -0.275513, -0.066972, 0.037922, 0.168500, 0.250842, 0.343610, 0.456317, 0.609854, 0.723480, 0.871583, 1.094826, 1.379656]),
        2500: np.array([-4.092684, -3.857589, -3.643798, -3.526780, -3.435625, -3.299991, -3.205845, -3.064868, -2.953012, -2.866335, -2.793947, -2.672247, -2.572334, -2.466089, -2.377069, -2.221479, -2.088661, -1.971542, -1.760707, -1.566675, -1.368817, -1.146401, -0.861879, -0.679869, -0.437902, -0.281904, -0.082133, 0.024417, 0.154644, 0.240862, 0.332666, 0.448330, 0.599592, 0.704139, 0.848778, 1.051630, 1.318240]),
    },
    'ct': {
        25: np.array([-5.394347, -5.033123, -4.720725, -4.532111, -4.401119, -4.206856, -4.069234, -3.869612, -3.729825, -3.613141, -3.518687, -3.364627, -3.240380, -3.118013, -3.012451, -2.834385, -2.689217, -2.559274, -2.337531, -2.137603, -1.944211, -1.740982, -1.499019, -1.344947, -1.138209, -0.997473, -0.810108, -0.713947, -0.593224, -0.522529, -0.429817, -0.319438, -0.172601, -0.077044, 0.067562, 0.306457, 0.601640]),
        50: np.array([-4.948284, -4.651358, -4.397630, -4.262526, -4.155668, -4.005448, -3.895514, -3.728374, -3.607416, -3.510485, -3.429245, -3.298567, -3.187665, -3.073370, -2.976268, -2.818369, -2.682422, -2.563697, -2.353361, -2.163018, -1.978110, -1.781270, -1.544853, -1.394490, -1.196774, -1.058800, -0.877418, -0.780111, -0.659203, -0.586799, -0.504686, -0.394217, -0.249363, -0.153356, -0.012439, 0.231013, 0.521789]),
        100: np.array([-4.801320, -4.506343, -4.287252, -4.153422, -4.054838, -3.913845, -3.811976, -3.660414, -3.547296, -3.453812, -3.377583, -3.252957, -3.153150, -3.046937, -2.954246, -2.800803, -2.672182, -2.557178, -2.353763, -2.168898, -1.988006, -1.792762, -1.562554, -1.417786, -1.223406, -1.090610, -0.911414, -0.813046, -0.695775, -0.622486, -0.537584, -0.427593, -0.272355, -0.171522, -0.039991, 0.178926, 0.456914]),
        250: np.array([-4.670771, -4.412116, -4.206060, -4.081516, -3.991063, -3.859104, -3.763565, -3.617788, -3.507792, -3.424150, -3.354186, -3.231236, -3.132372, -3.029796, -2.943317, -2.792320, -2.665100, -2.553611, -2.355772, -2.173529, -1.994374, -1.803053, -1.575894, -1.430782, -1.239295, -1.108927, -0.932113, -0.838054, -0.726713, -0.655140, -0.570737, -0.468932, -0.320863, -0.224084, -0.089297, 0.137902, 0.414289]),
        500: np.array([-4.649132, -4.386110, -4.186039, -4.065410, -3.973675, -3.843220, -3.743008, -3.605427, -3.499897, -3.413826, -3.341004, -3.223009, -3.129341, -3.027701, -2.941032, -2.793965, -2.668841, -2.557033, -2.359503, -2.177259, -1.997088, -1.804981, -1.575857, -1.430734, -1.239681, -1.109875, -0.931695, -0.835768, -0.718956, -0.650248, -0.564759, -0.459353, -0.314905, -0.219712, -0.086167, 0.137006, 0.394664]),
        1000: np.array([-4.623481, -4.376069, -4.163777, -4.052152, -3.964417, -3.838085, -3.743105, -3.599940, -3.496404, -3.412891, -3.341440, -3.225062, -3.128423, -3.025555, -2.939059, -2.792474, -2.668198, -2.556826, -2.360474, -2.181577, -2.003457, -1.811650, -1.585463, -1.439924, -1.247496, -1.116469, -0.938621, -0.842422, -0.723762, -0.650185, -0.566095, -0.459004, -0.321569, -0.225614, -0.088443, 0.136526, 0.419170]),
        2500: np.array([-4.584820, -4.370074, -4.181026, -4.063518, -3.977934, -3.851882, -3.755467, -3.612132, -3.507087, -3.423241, -3.348914, -3.228157, -3.134476, -3.032826, -2.945437, -2.796964, -2.671682, -2.561067, -2.363083, -2.183646, -2.003342, -1.812944, -1.583102, -1.435962, -1.242292, -1.116594, -0.937857, -0.844068, -0.725532, -0.654456, -0.570793, -0.464978, -0.320571, -0.220713, -0.087750, 0.118915, 0.357814]),
    },
}
