import { SteeringApp } from "./app";
import { HttpServiceClient } from "./api";
import "./style.css";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
new SteeringApp(root, new HttpServiceClient());
