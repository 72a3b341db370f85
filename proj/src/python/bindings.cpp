#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "locotrans/bench.hpp"
#include "locotrans/classifier.hpp"
#include "locotrans/config.hpp"
#include "locotrans/error.hpp"
#include "locotrans/event_detector.hpp"
#include "locotrans/fsm.hpp"
#include "locotrans/metrics.hpp"
#include "locotrans/model_bank.hpp"
#include "locotrans/pipeline.hpp"
#include "locotrans/synthetic.hpp"
#include "locotrans/trial.hpp"

namespace py = pybind11;
using namespace locotrans;

namespace {

std::vector<LabeledFeature> to_features(const std::vector<std::pair<double, bool>>& xs) {
  std::vector<LabeledFeature> out;
  out.reserve(xs.size());
  for (const auto& [v, l] : xs) out.push_back({v, l});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "locomotion transition recognition core";

  // Later registrations are tried first, so the subclasses win over Error.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::enum_<Mode> mode(m, "Mode");
  mode.value("Sit", Mode::Sit)
      .value("Walk", Mode::Walk)
      .value("StairAscent", Mode::StairAscent)
      .value("StairDescent", Mode::StairDescent);
  m.def("parse_mode", &parse_mode);

  py::enum_<TransitionKind> tk(m, "TransitionKind");
  tk.value("WalkToSit", TransitionKind::WalkToSit)
      .value("SitToWalk", TransitionKind::SitToWalk)
      .value("WalkToStairAscent", TransitionKind::WalkToStairAscent)
      .value("StairAscentToWalk", TransitionKind::StairAscentToWalk)
      .value("WalkToStairDescent", TransitionKind::WalkToStairDescent)
      .value("StairDescentToWalk", TransitionKind::StairDescentToWalk);
  m.def("parse_transition", &parse_transition);
  m.attr("ALL_TRANSITIONS") =
      std::vector<TransitionKind>(kAllTransitions.begin(), kAllTransitions.end());

  py::enum_<EventKind> ek(m, "EventKind");
  ek.value("MaxHipFlexion", EventKind::MaxHipFlexion)
      .value("HeelStrike", EventKind::HeelStrike)
      .value("BandCrossing", EventKind::BandCrossing);

  py::enum_<Method> method(m, "Method");
  method.value("TH", Method::Threshold).value("ML", Method::MachineLearning);

  py::enum_<Algorithm> algo(m, "Algorithm");
  algo.value("LogisticRegression", Algorithm::LogisticRegression)
      .value("LinearSVM", Algorithm::LinearSVM);

  py::class_<GaitSample>(m, "GaitSample")
      .def(py::init([](double t, double theta, double theta_dot, double load) {
             return GaitSample{t, theta, theta_dot, load};
           }),
           py::arg("t"), py::arg("theta"), py::arg("theta_dot"), py::arg("load"))
      .def_readwrite("t", &GaitSample::t)
      .def_readwrite("theta", &GaitSample::theta)
      .def_readwrite("theta_dot", &GaitSample::theta_dot)
      .def_readwrite("load", &GaitSample::load)
      .def("__eq__", [](const GaitSample& a, const GaitSample& b) { return a == b; });

  py::class_<GaitEvent>(m, "GaitEvent")
      .def(py::init<>())
      .def_readwrite("kind", &GaitEvent::kind)
      .def_readwrite("t", &GaitEvent::t)
      .def_readwrite("theta", &GaitEvent::theta)
      .def_readwrite("theta_dot", &GaitEvent::theta_dot)
      .def("__repr__", [](const GaitEvent& e) {
        return "GaitEvent(" + std::string(to_string(e.kind)) + ", t=" + std::to_string(e.t) +
               ", theta=" + std::to_string(e.theta) + ")";
      });

  py::class_<DetectorConfig>(m, "DetectorConfig")
      .def(py::init<>())
      .def_readwrite("mhf_min_prominence", &DetectorConfig::mhf_min_prominence)
      .def_readwrite("mhf_refractory", &DetectorConfig::mhf_refractory)
      .def_readwrite("mhf_smoothing", &DetectorConfig::mhf_smoothing)
      .def_readwrite("hs_load_threshold", &DetectorConfig::hs_load_threshold)
      .def_readwrite("crossing_band_low", &DetectorConfig::crossing_band_low)
      .def_readwrite("crossing_band_high", &DetectorConfig::crossing_band_high)
      .def_readwrite("legacy_crossing", &DetectorConfig::legacy_crossing)
      .def_readwrite("use_legacy_crossing", &DetectorConfig::use_legacy_crossing)
      .def("validate", &DetectorConfig::validate);

  py::class_<EventDetector>(m, "EventDetector")
      .def(py::init<DetectorConfig>(), py::arg("config") = DetectorConfig{})
      .def("push",
           [](EventDetector& d, const GaitSample& s) {
             const EventBatch b = d.push(s);
             return std::vector<GaitEvent>(b.begin(), b.end());
           })
      .def("reset", &EventDetector::reset)
      .def_property_readonly("samples_seen", &EventDetector::samples_seen);
  m.def("detect_events", &detect_events, py::arg("samples"),
        py::arg("config") = DetectorConfig{});

  py::class_<LinearModel>(m, "LinearModel")
      .def(py::init([](double w, double b, Algorithm a) { return LinearModel{w, b, a}; }),
           py::arg("w"), py::arg("b"), py::arg("algorithm") = Algorithm::LogisticRegression)
      .def_readwrite("w", &LinearModel::w)
      .def_readwrite("b", &LinearModel::b)
      .def_readwrite("algorithm", &LinearModel::algorithm);

  py::class_<ThresholdModel>(m, "ThresholdModel")
      .def_readonly("threshold", &ThresholdModel::threshold)
      .def_readonly("fire_above", &ThresholdModel::fire_above)
      .def_readonly("source", &ThresholdModel::source);

  m.def("predict_ml", &predict_ml);
  m.def("predict_th", &predict_th);
  m.def("extract_threshold", &extract_threshold);
  m.def("threshold_model", &threshold_model);
  m.def(
      "fit_logistic_1d",
      [](const std::vector<std::pair<double, bool>>& xs, double lr, int epochs, double l2) {
        return fit_logistic_1d(to_features(xs), LogisticOptions{lr, epochs, l2});
      },
      py::arg("data"), py::arg("learning_rate") = 0.1, py::arg("epochs") = 2000,
      py::arg("l2") = 1e-4);
  m.def(
      "fit_linear_svm_1d",
      [](const std::vector<std::pair<double, bool>>& xs, double c, int epochs) {
        return fit_linear_svm_1d(to_features(xs), SvmOptions{c, epochs});
      },
      py::arg("data"), py::arg("c") = 1.0, py::arg("epochs") = 2000);

  py::class_<ModelBank>(m, "ModelBank")
      .def_static("from_json", &bank_from_json_text)
      .def_static("load", &load_bank)
      .def("to_json", &bank_to_json_text)
      .def("save", [](const ModelBank& b, const std::filesystem::path& p) { save_bank(b, p); })
      .def("__getitem__", [](const ModelBank& b, TransitionKind k) { return b.at(k); });

  py::class_<TransitionDecision>(m, "TransitionDecision")
      .def_readonly("kind", &TransitionDecision::kind)
      .def_readonly("t", &TransitionDecision::t)
      .def_readonly("mode_before", &TransitionDecision::mode_before)
      .def_property_readonly("feature_value",
                             [](const TransitionDecision& d) { return d.feature.value; })
      .def_readonly("fired", &TransitionDecision::fired);

  py::class_<FsmEngine>(m, "FsmEngine")
      .def(py::init<ModelBank, Mode, Method>(), py::arg("bank"),
           py::arg("initial") = Mode::Walk, py::arg("method") = Method::Threshold)
      .def("on_event", &FsmEngine::on_event)
      .def("reset", &FsmEngine::reset)
      .def_property_readonly("mode", &FsmEngine::mode)
      .def_property_readonly("pending_mhf", &FsmEngine::pending_mhf)
      .def_property_readonly("log", &FsmEngine::log);

  py::class_<TransitionLog>(m, "TransitionLog")
      .def_readonly("initial_mode", &TransitionLog::initial_mode)
      .def_readonly("final_mode", &TransitionLog::final_mode)
      .def_readonly("decisions", &TransitionLog::decisions)
      .def_readonly("events", &TransitionLog::events)
      .def("fired", &TransitionLog::fired);

  m.def(
      "run_stream",
      [](const ModelBank& bank, const std::vector<GaitSample>& samples, Mode initial,
         Method method, const DetectorConfig& cfg) {
        return run_stream(bank, cfg, samples, initial, method);
      },
      py::arg("bank"), py::arg("samples"), py::arg("initial") = Mode::Walk,
      py::arg("method") = Method::Threshold, py::arg("config") = DetectorConfig{});

  py::class_<Annotation>(m, "Annotation")
      .def_readonly("t", &Annotation::t)
      .def_readonly("mode", &Annotation::mode);
  py::class_<Trial>(m, "Trial")
      .def_readonly("id", &Trial::id)
      .def_readonly("samples", &Trial::samples)
      .def_readonly("annotations", &Trial::annotations);
  m.def("load_trial", [](const std::filesystem::path& p) { return load_trial(p); });
  m.def("save_trial", &save_trial);
  m.def(
      "generate_protocol_trial",
      [](std::uint64_t seed, double noise_sd, std::string id) {
        return generate_synthetic(protocol_script(noise_sd), seed, std::move(id));
      },
      py::arg("seed") = 1, py::arg("noise_sd") = 0.0, py::arg("id") = "synthetic");

  m.def("to_string", [](Mode v) { return std::string(to_string(v)); });
  m.def("to_string", [](TransitionKind v) { return std::string(to_string(v)); });
  m.def("to_string", [](EventKind v) { return std::string(to_string(v)); });
  m.def("to_string", [](Method v) { return std::string(to_string(v)); });
  m.def("to_string", [](Algorithm v) { return std::string(to_string(v)); });

  m.def("recognition_accuracy", &recognition_accuracy);

  m.def("train_bank", [](const std::vector<Trial>& trials) {
    return train_bank(trials, EngineConfig{}).bank;
  });
}
