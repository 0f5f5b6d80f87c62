"""Learned CVRP cost predictor."""

from hvrp.neural.checkpoint import load_checkpoint, save_checkpoint
from hvrp.neural.estimator import NeuralEstimator
from hvrp.neural.graph import GraphBatch, KnnGraph, build_knn_graph, collate
from hvrp.neural.model import PredictorModel, create_model, grad, loss
from hvrp.neural.training import EvaluationReport, TrainHistory, evaluate, train

__all__ = [
    "EvaluationReport",
    "GraphBatch",
    "KnnGraph",
    "NeuralEstimator",
    "PredictorModel",
    "TrainHistory",
    "build_knn_graph",
    "collate",
    "create_model",
    "evaluate",
    "grad",
    "load_checkpoint",
    "loss",
    "save_checkpoint",
    "train",
]
